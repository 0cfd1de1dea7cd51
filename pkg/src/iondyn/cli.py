"""Command-line front end.

    iondyn simulate --config run.ini --out run.csv [--summary-json s.json]
    iondyn scan     --config run.ini --out scan.csv
    iondyn critical --nbar 0,0.35,1.0 [--w0 4e6]
    iondyn thermal  --w0 4e6 --temp 1.42e-4

Exit codes: 0 success, 2 configuration or input error, 3 integration
failure, 4 growth overflow in an unstable run.
"""

from __future__ import annotations

import argparse
import math
import sys

from .config import DEFAULT_FREQUENCY_HZ, load_config
from .errors import GrowthOverflow, InvalidInput, IonDynError, StepFailure
from .heisenberg import critical_q
from .model import SI, thermal_config, thermal_config_from_nbar
from .report import run_simulation, summary_to_json, write_scan_csv
from .stability import scan

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INTEGRATION = 3
EXIT_OVERFLOW = 4


def _print_summary(summary: dict) -> None:
    for key, value in summary.items():
        print(f"{key} = {value}")


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    report = run_simulation(cfg.protocol, cfg.thermal,
                            tau_end=cfg.simulation.tau_end,
                            samples=cfg.simulation.samples,
                            tolerance=cfg.simulation.rtol)
    report.write_csv(args.out)
    if args.summary_json:
        summary_to_json(report, args.summary_json)
    _print_summary(report.summary())
    return EXIT_OK


def cmd_scan(args) -> int:
    cfg = load_config(args.config)
    s = cfg.scan
    results = scan((s.a_min, s.a_max), (s.q_min, s.q_max),
                   s.a_steps, s.q_steps, tolerance=s.rtol)
    write_scan_csv(results, args.out)
    counts = {}
    for res in results:
        counts[res.classification] = counts.get(res.classification, 0) + 1
    print(f"points = {len(results)}")
    for name in ("stable", "marginal", "unstable"):
        print(f"{name} = {counts.get(name, 0)}")
    return EXIT_OK


def _parse_nbar_list(text: str):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise InvalidInput(f"--nbar {text!r}: not a comma-separated number list")
    if not values:
        raise InvalidInput("--nbar list is empty")
    if any(v < 0 for v in values):
        raise InvalidInput("--nbar entries must be >= 0")
    return values


def cmd_critical(args) -> int:
    values = _parse_nbar_list(args.nbar)
    w0 = 2.0 * math.pi * args.w0
    print(f"{'nbar':>12} {'Q_critical':>16} {'T_kelvin':>14}")
    for nbar in values:
        qc = critical_q(nbar)
        temp = thermal_config_from_nbar(w0, nbar).temperature
        print(f"{nbar:>12.6g} {qc:>16.10g} {temp:>14.6g}")
    return EXIT_OK


def cmd_thermal(args) -> int:
    w0 = 2.0 * math.pi * args.w0
    th = thermal_config(w0, args.temp, SI)
    print(f"w0_rad_per_s = {w0:.10g}")
    print(f"temperature_k = {th.temperature:.10g}")
    print(f"nbar = {th.nbar:.10g}")
    print(f"beta_per_joule = {th.beta:.10g}")
    print(f"e0_joule = {th.e0:.10g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iondyn",
        description="Trapped-ion oscillator dynamics: non-adiabaticity, "
                    "squeezing, classicality, and drive stability.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one protocol and write a CSV report")
    p.add_argument("--config", required=True, help="INI config file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--summary-json", default=None,
                   help="also write the summary block as JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan", help="classify a grid of drive parameters")
    p.add_argument("--config", required=True, help="INI config file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("critical",
                       help="critical non-adiabaticity for given occupations")
    p.add_argument("--nbar", required=True,
                   help="comma-separated list of mean occupations")
    p.add_argument("--w0", type=float, default=DEFAULT_FREQUENCY_HZ,
                   help="trap frequency in Hz for the temperature column "
                        "(default %(default)s)")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("thermal", help="thermal state parameters for (w0, T)")
    p.add_argument("--w0", type=float, required=True,
                   help="trap frequency in Hz")
    p.add_argument("--temp", type=float, required=True,
                   help="bath temperature in kelvin")
    p.set_defaults(func=cmd_thermal)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GrowthOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except StepFailure as exc:
        print(f"error: integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except IonDynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
