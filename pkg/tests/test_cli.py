import json
import math

import numpy as np
import pytest

from iondyn.cli import main
from iondyn.config import load_config
from iondyn.errors import ConfigError

BASE_CONFIG = """\
[protocol]
kind = mathieu
a_bar = 6.0
q_bar = 0.5

[thermal]
nbar = 0.35

[simulation]
tau_end = 6.283185307179586
samples = 200
rtol = 1e-10
"""


def write_config(tmp_path, text=BASE_CONFIG, name="run.ini"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadConfig:
    def test_parses_base(self, tmp_path):
        cfg = load_config(write_config(tmp_path))
        assert cfg.protocol.a_bar == 6.0
        assert cfg.thermal.nbar == pytest.approx(0.35)
        assert cfg.simulation.samples == 200

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.ini")

    def test_unknown_key_rejected(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG + "wobble = 3\n")
        with pytest.raises(ConfigError, match="wobble"):
            load_config(path)

    def test_unknown_section_rejected(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG + "\n[extras]\nx = 1\n")
        with pytest.raises(ConfigError, match="extras"):
            load_config(path)

    def test_temperature_and_nbar_conflict(self, tmp_path):
        text = BASE_CONFIG.replace("nbar = 0.35",
                                   "nbar = 0.35\ntemperature_k = 1e-4")
        with pytest.raises(ConfigError, match="not both"):
            load_config(write_config(tmp_path, text))

    def test_displaced_initial_state_rejected(self, tmp_path):
        text = BASE_CONFIG.replace("nbar = 0.35", "nbar = 0.35\nmean_x = 0.1")
        with pytest.raises(ConfigError, match="displaced"):
            load_config(write_config(tmp_path, text))

    def test_displacement_zero_accepted(self, tmp_path):
        text = BASE_CONFIG.replace("nbar = 0.35",
                                   "nbar = 0.35\nmean_x = 0\nmean_p = 0")
        cfg = load_config(write_config(tmp_path, text))
        assert cfg.thermal.nbar == pytest.approx(0.35)

    def test_default_thermal_is_trap_experiment(self, tmp_path):
        text = "[protocol]\nkind = mathieu\na_bar = 6.0\nq_bar = 0.5\n"
        cfg = load_config(write_config(tmp_path, text))
        assert cfg.thermal.temperature == pytest.approx(1.42e-4)
        assert cfg.thermal.nbar == pytest.approx(0.35, rel=0.02)
        # default trap frequency 4 MHz
        assert cfg.protocol.w_initial == pytest.approx(2 * math.pi * 4e6,
                                                       rel=1e-12)

    def test_other_protocol_kinds(self, tmp_path):
        for body, kind in [
            ("kind = constant\nfrequency_hz = 2e6", "ConstantProtocol"),
            ("kind = linear_ramp\nstart_hz = 2e6\nstop_hz = 4e6\nramp_tau = 10",
             "LinearRampProtocol"),
            ("kind = sudden_jump\nstart_hz = 2e6\nstop_hz = 4e6\njump_tau = 1",
             "SuddenJumpProtocol"),
            ("kind = tabulated\ntaus = 0 5 10\n"
             "omega_squared = 1.0e14 1.5e14 1.2e14\ninterpolation = linear",
             "TabulatedProtocol"),
        ]:
            cfg = load_config(write_config(tmp_path, f"[protocol]\n{body}\n"))
            assert type(cfg.protocol).__name__ == kind

    def test_degenerate_drive_is_config_error(self, tmp_path):
        text = "[protocol]\nkind = mathieu\na_bar = 2.0\nq_bar = 1.0\n"
        with pytest.raises(ConfigError):
            load_config(write_config(tmp_path, text))


class TestSimulateCommand:
    def test_runs_and_writes_csv(self, tmp_path, capsys):
        cfg = write_config(tmp_path)
        out = tmp_path / "run.csv"
        code = main(["simulate", "--config", str(cfg), "--out", str(out)])
        assert code == 0
        assert out.exists()
        printed = capsys.readouterr().out
        for key in ("max_Q", "min_C", "first_tau_nonclassical",
                    "max_wronskian_drift"):
            assert f"{key} = " in printed
        body = [ln for ln in out.read_text().splitlines()
                if not ln.startswith("#")]
        assert len(body) == 201  # header + samples

    def test_byte_identical_rerun(self, tmp_path):
        cfg = write_config(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["simulate", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["simulate", "--config", str(cfg), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_summary_json(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "run.csv"
        js = tmp_path / "summary.json"
        code = main(["simulate", "--config", str(cfg), "--out", str(out),
                     "--summary-json", str(js)])
        assert code == 0
        data = json.loads(js.read_text())
        assert data["nbar"] == pytest.approx(0.35)
        assert data["samples"] == 200

    def test_config_error_exit_code(self, tmp_path, capsys):
        path = write_config(tmp_path, BASE_CONFIG + "bogus = 1\n")
        code = main(["simulate", "--config", str(path),
                     "--out", str(tmp_path / "x.csv")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_overflow_exit_code(self, tmp_path, capsys):
        text = ("[protocol]\nkind = mathieu\na_bar = 1.0\nq_bar = 0.45\n"
                "[thermal]\nnbar = 0.35\n"
                "[simulation]\ntau_end = 150.0\nsamples = 300\nrtol = 1e-10\n")
        code = main(["simulate", "--config", str(write_config(tmp_path, text)),
                     "--out", str(tmp_path / "x.csv")])
        assert code == 4
        err = capsys.readouterr().err
        assert "tau" in err  # reports how far it got


class TestScanCommand:
    def test_writes_grid(self, tmp_path, capsys):
        text = BASE_CONFIG + ("\n[scan]\na_min = 0.0\na_max = 2.0\n"
                              "q_min = 0.0\nq_max = 0.5\n"
                              "a_steps = 5\nq_steps = 3\nrtol = 1e-9\n")
        cfg = write_config(tmp_path, text)
        out = tmp_path / "scan.csv"
        assert main(["scan", "--config", str(cfg), "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "a_bar,q_bar,trace,classification"
        assert len(lines) == 1 + 15
        assert "points = 15" in capsys.readouterr().out

    def test_zero_drive_row_matches_closed_form(self, tmp_path):
        text = BASE_CONFIG + ("\n[scan]\na_min = 0.5\na_max = 4.5\n"
                              "q_min = 0.0\nq_max = 1.0\n"
                              "a_steps = 5\nq_steps = 2\nrtol = 1e-9\n")
        cfg = write_config(tmp_path, text)
        out = tmp_path / "scan.csv"
        assert main(["scan", "--config", str(cfg), "--out", str(out)]) == 0
        for line in out.read_text().splitlines()[1:6]:
            a, q, trace, _ = line.split(",")
            assert float(q) == 0.0
            expected = 2 * math.cos(math.pi * math.sqrt(float(a)))
            assert float(trace) == pytest.approx(expected, abs=1e-8)

    def test_byte_identical_rerun(self, tmp_path):
        text = BASE_CONFIG + ("\n[scan]\na_steps = 4\nq_steps = 3\n"
                              "a_max = 3.0\nq_max = 0.6\n")
        cfg = write_config(tmp_path, text)
        out1, out2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
        assert main(["scan", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["scan", "--config", str(cfg), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestCriticalCommand:
    def test_table(self, capsys):
        assert main(["critical", "--nbar", "0,0.35", "--w0", "4e6"]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert len(lines) == 3
        row0 = lines[1].split()
        assert float(row0[0]) == 0.0
        assert float(row0[1]) == 1.0
        assert float(row0[2]) == 0.0
        row1 = lines[2].split()
        assert float(row1[1]) == pytest.approx(1.1441176470588235, rel=1e-9)
        assert float(row1[2]) == pytest.approx(1.42e-4, rel=0.02)

    def test_negative_entry_rejected(self, capsys):
        assert main(["critical", "--nbar", "0.5,-1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_malformed_list_rejected(self, capsys):
        assert main(["critical", "--nbar", "a,b"]) == 2


class TestThermalCommand:
    def test_reports_occupation(self, capsys):
        assert main(["thermal", "--w0", "4e6", "--temp", "1.42e-4"]) == 0
        out = capsys.readouterr().out
        values = dict(line.split(" = ") for line in out.strip().splitlines())
        assert float(values["nbar"]) == pytest.approx(0.35, rel=0.02)
        assert float(values["w0_rad_per_s"]) == pytest.approx(
            2 * math.pi * 4e6, rel=1e-9)

    def test_negative_temperature(self, capsys):
        assert main(["thermal", "--w0", "4e6", "--temp", "-1.0"]) == 2
