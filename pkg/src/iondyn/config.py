"""INI configuration files for the command-line front end.

Three sections, SI units throughout:

    [protocol]
    kind = mathieu | constant | linear_ramp | sudden_jump | tabulated
    # mathieu:     a_bar, q_bar, and frequency_hz (trap frequency w0/2pi;
    #              the time scale follows from w(0) = w0) or phi_rad_per_s
    # constant:    frequency_hz
    # linear_ramp: start_hz, stop_hz, ramp_tau  (tau in units of w0*t)
    # sudden_jump: start_hz, stop_hz, jump_tau
    # tabulated:   taus, omega_squared (space-separated lists; rad^2/s^2),
    #              interpolation = pchip | linear

    [thermal]
    temperature_k = 1.42e-4   # or: nbar = 0.35 (exactly one)

    [simulation]
    tau_end = 37.699          # default 12 pi
    samples = 4000
    rtol = 1e-11

A [scan] section (a_min, a_max, q_min, q_max, a_steps, q_steps, rtol)
configures the stability scan.  Unknown keys are rejected.  The initial
state must be an undisplaced thermal state: mean_x / mean_p keys are only
accepted as 0.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass

from .errors import ConfigError, IonDynError
from .model import (
    ConstantProtocol,
    LinearRampProtocol,
    MathieuProtocol,
    SuddenJumpProtocol,
    TabulatedProtocol,
    ThermalConfig,
    mathieu_scale,
    thermal_config,
    thermal_config_from_nbar,
)
from .report import DEFAULT_SAMPLES, DEFAULT_TAU_END

DEFAULT_FREQUENCY_HZ = 4.0e6
DEFAULT_TEMPERATURE_K = 1.42e-4


@dataclass(frozen=True)
class SimulationSettings:
    tau_end: float = DEFAULT_TAU_END
    samples: int = DEFAULT_SAMPLES
    rtol: float = 1e-11


@dataclass(frozen=True)
class ScanSettings:
    a_min: float = 0.0
    a_max: float = 14.0
    q_min: float = 0.0
    q_max: float = 3.0
    a_steps: int = 57
    q_steps: int = 25
    rtol: float = 1e-10


@dataclass(frozen=True)
class RunConfig:
    protocol: object
    thermal: ThermalConfig
    simulation: SimulationSettings
    scan: ScanSettings


class _Section:
    """One INI section with typed getters and strict key checking."""

    def __init__(self, name: str, items: dict):
        self.name = name
        self.items = dict(items)
        self.seen = set()

    def get_float(self, key, default=None):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"[{self.name}] {key} = {raw!r} is not a number")

    def get_int(self, key, default=None):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"[{self.name}] {key} = {raw!r} is not an integer")

    def get_str(self, key, default=None):
        raw = self._raw(key)
        return default if raw is None else raw

    def get_floats(self, key):
        raw = self._raw(key)
        if raw is None:
            return None
        try:
            return [float(tok) for tok in raw.split()]
        except ValueError:
            raise ConfigError(f"[{self.name}] {key} must be space-separated numbers")

    def _raw(self, key):
        self.seen.add(key)
        return self.items.get(key)

    def finish(self):
        unknown = set(self.items) - self.seen
        if unknown:
            raise ConfigError(
                f"unknown key(s) in [{self.name}]: {', '.join(sorted(unknown))}"
            )


def _w0_from_hz(section: _Section, key: str, default_hz=None) -> float:
    hz = section.get_float(key, default_hz)
    if hz is None:
        raise ConfigError(f"[{section.name}] missing {key}")
    if hz <= 0:
        raise ConfigError(f"[{section.name}] {key} must be > 0")
    return 2.0 * math.pi * hz


def _parse_protocol(section: _Section):
    kind = section.get_str("kind")
    if kind is None:
        raise ConfigError("[protocol] missing kind")
    if kind == "constant":
        return ConstantProtocol(w0=_w0_from_hz(section, "frequency_hz",
                                               DEFAULT_FREQUENCY_HZ))
    if kind == "mathieu":
        a_bar = section.get_float("a_bar")
        q_bar = section.get_float("q_bar")
        if a_bar is None or q_bar is None:
            raise ConfigError("[protocol] mathieu needs a_bar and q_bar")
        phi = section.get_float("phi_rad_per_s")
        freq = section.get_float("frequency_hz")
        if phi is not None and freq is not None:
            raise ConfigError(
                "[protocol] give phi_rad_per_s or frequency_hz, not both"
            )
        if phi is None:
            w0 = 2.0 * math.pi * (freq if freq is not None
                                  else DEFAULT_FREQUENCY_HZ)
            phi = mathieu_scale(w0, a_bar, q_bar)
        return MathieuProtocol(a_bar=a_bar, q_bar=q_bar, phi=phi)
    if kind in ("linear_ramp", "sudden_jump"):
        w0 = _w0_from_hz(section, "start_hz")
        w1 = _w0_from_hz(section, "stop_hz")
        if kind == "linear_ramp":
            tau = section.get_float("ramp_tau")
            if tau is None:
                raise ConfigError("[protocol] linear_ramp needs ramp_tau")
            return LinearRampProtocol(w0=w0, w1=w1, tau_ramp=tau)
        tau = section.get_float("jump_tau")
        if tau is None:
            raise ConfigError("[protocol] sudden_jump needs jump_tau")
        return SuddenJumpProtocol(w0=w0, w1=w1, tau_jump=tau)
    if kind == "tabulated":
        taus = section.get_floats("taus")
        w2s = section.get_floats("omega_squared")
        if taus is None or w2s is None:
            raise ConfigError("[protocol] tabulated needs taus and omega_squared")
        interp = section.get_str("interpolation", "pchip")
        return TabulatedProtocol(taus=tuple(taus), w2s=tuple(w2s),
                                 interpolation=interp)
    raise ConfigError(f"[protocol] unknown kind {kind!r}")


def _parse_thermal(section: _Section, w0: float) -> ThermalConfig:
    for key in ("mean_x", "mean_p"):
        value = section.get_float(key, 0.0)
        if value != 0.0:
            raise ConfigError(
                f"[thermal] {key} = {value}: displaced initial states are "
                "not supported; the initial state must be thermal"
            )
    temp = section.get_float("temperature_k")
    nbar = section.get_float("nbar")
    if temp is not None and nbar is not None:
        raise ConfigError("[thermal] give temperature_k or nbar, not both")
    if temp is None and nbar is None:
        temp = DEFAULT_TEMPERATURE_K
    if nbar is not None:
        return thermal_config_from_nbar(w0, nbar)
    return thermal_config(w0, temp)


def _parse_simulation(section: _Section) -> SimulationSettings:
    return SimulationSettings(
        tau_end=section.get_float("tau_end", DEFAULT_TAU_END),
        samples=section.get_int("samples", DEFAULT_SAMPLES),
        rtol=section.get_float("rtol", 1e-11),
    )


def _parse_scan(section: _Section) -> ScanSettings:
    d = ScanSettings()
    return ScanSettings(
        a_min=section.get_float("a_min", d.a_min),
        a_max=section.get_float("a_max", d.a_max),
        q_min=section.get_float("q_min", d.q_min),
        q_max=section.get_float("q_max", d.q_max),
        a_steps=section.get_int("a_steps", d.a_steps),
        q_steps=section.get_int("q_steps", d.q_steps),
        rtol=section.get_float("rtol", d.rtol),
    )


def load_config(path) -> RunConfig:
    """Parse and validate a config file; any defect raises ConfigError."""
    parser = configparser.ConfigParser(interpolation=None)
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    known = {"protocol", "thermal", "simulation", "scan"}
    extra = set(parser.sections()) - known
    if extra:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(extra))}")

    def section(name):
        items = parser[name] if parser.has_section(name) else {}
        return _Section(name, items)

    try:
        sec = section("protocol")
        protocol = _parse_protocol(sec)
        sec.finish()

        sec = section("thermal")
        thermal = _parse_thermal(sec, protocol.w_initial)
        sec.finish()

        sec = section("simulation")
        simulation = _parse_simulation(sec)
        sec.finish()

        sec = section("scan")
        scan_settings = _parse_scan(sec)
        sec.finish()
    except ConfigError:
        raise
    except IonDynError as exc:
        raise ConfigError(str(exc)) from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    if simulation.tau_end <= 0 or simulation.samples < 2:
        raise ConfigError("[simulation] needs tau_end > 0 and samples >= 2")
    return RunConfig(protocol=protocol, thermal=thermal,
                     simulation=simulation, scan=scan_settings)
