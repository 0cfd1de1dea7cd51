"""Frequency protocols, unit handling, and the thermal initial state.

The trap is a harmonic oscillator whose squared frequency w^2(t) follows a
configurable protocol.  All dynamics is integrated in the dimensionless time
tau = phi * t, where phi (rad/s) is the protocol's natural time scale; in
those units the oscillator equation keeps its form with the scaled squared
frequency w^2(tau)/phi^2.  Physical (SI) values appear only at the I/O
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import (
    DegenerateProtocol,
    InvalidTemperature,
    NonPositiveFrequency,
    OutOfDomain,
)

# CODATA 2018
HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23      # J/K

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class UnitSystem:
    """Physical constants of the working unit system.

    ``si()`` uses CODATA constants; ``dimensionless()`` sets hbar = m = 1 and
    measures frequencies in units of the initial trap frequency (so w0 = 1).
    """

    mode: str
    hbar: float
    k_b: float
    mass: float

    @staticmethod
    def si(mass: float = 1.0) -> "UnitSystem":
        return UnitSystem(mode="si", hbar=HBAR, k_b=K_B, mass=mass)

    @staticmethod
    def dimensionless() -> "UnitSystem":
        return UnitSystem(mode="dimensionless", hbar=1.0, k_b=1.0, mass=1.0)

    # Frequencies scale by w0, energies by hbar*w0, times by 1/w0.
    def frequency_to_dimensionless(self, w: float, w0: float) -> float:
        return w / w0

    def frequency_from_dimensionless(self, w_scaled: float, w0: float) -> float:
        return w_scaled * w0

    def energy_to_dimensionless(self, e: float, w0: float) -> float:
        return e / (self.hbar * w0)

    def energy_from_dimensionless(self, e_scaled: float, w0: float) -> float:
        return e_scaled * self.hbar * w0


SI = UnitSystem.si()
DIMENSIONLESS = UnitSystem.dimensionless()


class FrequencyProtocol:
    """Base class for squared-frequency protocols w^2(tau).

    Subclasses provide ``scaled_omega_squared`` (w^2/phi^2 as a function of
    dimensionless tau), the time scale ``phi`` (rad/s), and the physical
    initial frequency ``w_initial`` = w(tau=0).  ``breakpoints`` lists tau
    values where w^2 is not smooth; the integrator never steps across them.
    """

    phi: float
    w_initial: float
    breakpoints: tuple

    @property
    def w0_scaled(self) -> float:
        """Initial frequency in scaled units, w(0)/phi."""
        return self.w_initial / self.phi

    def scaled_omega_squared(self, tau: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def omega_squared(self, tau: ArrayLike) -> ArrayLike:
        """Physical squared frequency at dimensionless time tau (rad^2/s^2)."""
        return self.phi**2 * self.scaled_omega_squared(tau)

    def _check_positive(self, w2: ArrayLike, tau: ArrayLike) -> ArrayLike:
        if np.any(np.asarray(w2) <= 0.0):
            raise NonPositiveFrequency(
                f"{type(self).__name__}: w^2 <= 0 at tau = {tau}"
            )
        return w2


@dataclass(frozen=True)
class ConstantProtocol(FrequencyProtocol):
    """Fixed trap frequency w0 (rad/s)."""

    w0: float
    breakpoints: tuple = ()

    def __post_init__(self):
        if self.w0 <= 0:
            raise NonPositiveFrequency(f"w0 = {self.w0} must be > 0")

    @property
    def phi(self) -> float:
        return self.w0

    @property
    def w_initial(self) -> float:
        return self.w0

    def scaled_omega_squared(self, tau: ArrayLike) -> ArrayLike:
        return np.ones_like(np.asarray(tau, dtype=float)) if np.ndim(tau) else 1.0


@dataclass(frozen=True)
class MathieuProtocol(FrequencyProtocol):
    """Periodically driven trap, w^2(tau) = phi^2 * (a_bar - 2 q_bar cos 2 tau).

    ``a_bar`` and ``q_bar`` are the dimensionless drive parameters and
    ``phi`` (rad/s) sets the physical time scale tau = phi * t.  The initial
    frequency is w(0) = phi * sqrt(a_bar - 2 q_bar).
    """

    a_bar: float
    q_bar: float
    phi: float = 1.0
    breakpoints: tuple = ()

    def __post_init__(self):
        if self.phi <= 0:
            raise NonPositiveFrequency(f"phi = {self.phi} must be > 0")
        if self.a_bar - 2 * abs(self.q_bar) <= 0:
            # min over tau of w^2; cos(2 tau) sweeps [-1, 1]
            raise NonPositiveFrequency(
                f"a_bar - 2|q_bar| = {self.a_bar - 2 * abs(self.q_bar)} <= 0: "
                "w^2(tau) is not positive for all tau"
            )

    @property
    def w_initial(self) -> float:
        return self.phi * math.sqrt(self.a_bar - 2 * self.q_bar)

    def scaled_omega_squared(self, tau: ArrayLike) -> ArrayLike:
        return self.a_bar - 2.0 * self.q_bar * np.cos(2.0 * np.asarray(tau))

    @staticmethod
    def from_initial_frequency(w0: float, a_bar: float, q_bar: float) -> "MathieuProtocol":
        """Construct with phi chosen so that w(0) = w0."""
        return MathieuProtocol(a_bar=a_bar, q_bar=q_bar,
                               phi=mathieu_scale(w0, a_bar, q_bar))


@dataclass(frozen=True)
class LinearRampProtocol(FrequencyProtocol):
    """Frequency ramped linearly from w0 to w1 over tau in [0, tau_ramp].

    w0, w1 in rad/s; tau_ramp in dimensionless time (tau = w0 * t, so one
    initial oscillation period is tau = 2 pi).  After the ramp the frequency
    stays at w1.
    """

    w0: float
    w1: float
    tau_ramp: float

    def __post_init__(self):
        if self.w0 <= 0 or self.w1 <= 0:
            raise NonPositiveFrequency("ramp endpoints must be > 0")
        if self.tau_ramp <= 0:
            raise ValueError(f"tau_ramp = {self.tau_ramp} must be > 0")

    @property
    def phi(self) -> float:
        return self.w0

    @property
    def w_initial(self) -> float:
        return self.w0

    @property
    def breakpoints(self) -> tuple:
        return (self.tau_ramp,)

    def scaled_omega_squared(self, tau: ArrayLike) -> ArrayLike:
        frac = np.clip(np.asarray(tau, dtype=float) / self.tau_ramp, 0.0, 1.0)
        w = 1.0 + (self.w1 / self.w0 - 1.0) * frac
        return w * w


@dataclass(frozen=True)
class SuddenJumpProtocol(FrequencyProtocol):
    """Instantaneous jump from w0 to w1 at tau_jump (tau = w0 * t)."""

    w0: float
    w1: float
    tau_jump: float

    def __post_init__(self):
        if self.w0 <= 0 or self.w1 <= 0:
            raise NonPositiveFrequency("jump endpoints must be > 0")
        if self.tau_jump <= 0:
            raise ValueError(f"tau_jump = {self.tau_jump} must be > 0")

    @property
    def phi(self) -> float:
        return self.w0

    @property
    def w_initial(self) -> float:
        return self.w0

    @property
    def breakpoints(self) -> tuple:
        return (self.tau_jump,)

    def scaled_omega_squared(self, tau: ArrayLike) -> ArrayLike:
        ratio2 = (self.w1 / self.w0) ** 2
        return np.where(np.asarray(tau) < self.tau_jump, 1.0, ratio2)


@dataclass(frozen=True)
class TabulatedProtocol(FrequencyProtocol):
    """w^2 given by samples (tau_i, w2_i), interpolated.

    ``interpolation`` is "pchip" (monotone cubic, default: smooth enough for
    the adaptive integrator) or "linear".  The tau samples must be strictly
    increasing and cover tau = 0; w2 samples are physical (rad^2/s^2) and
    must be positive.  Evaluation outside the sample range raises OutOfDomain.
    """

    taus: tuple
    w2s: tuple
    interpolation: str = "pchip"

    def __post_init__(self):
        taus = np.asarray(self.taus, dtype=float)
        w2s = np.asarray(self.w2s, dtype=float)
        if taus.ndim != 1 or taus.size < 2 or w2s.shape != taus.shape:
            raise ValueError("need >= 2 (tau, w^2) samples of equal length")
        if np.any(np.diff(taus) <= 0):
            raise ValueError("tau samples must be strictly increasing")
        if taus[0] > 0.0:
            raise ValueError("samples must cover tau = 0")
        if np.any(w2s <= 0):
            raise NonPositiveFrequency("tabulated w^2 samples must be > 0")
        if self.interpolation not in ("pchip", "linear"):
            raise ValueError(f"unknown interpolation {self.interpolation!r}")
        object.__setattr__(self, "taus", tuple(taus))
        object.__setattr__(self, "w2s", tuple(w2s))

    @cached_property
    def _interp(self):
        if self.interpolation == "pchip":
            return PchipInterpolator(self.taus, self.w2s, extrapolate=False)
        return lambda t: np.interp(t, self.taus, self.w2s)

    @property
    def phi(self) -> float:
        return math.sqrt(self._w2_at_zero())

    @property
    def w_initial(self) -> float:
        return math.sqrt(self._w2_at_zero())

    def _w2_at_zero(self) -> float:
        return float(np.asarray(self._interp(0.0)))

    @property
    def breakpoints(self) -> tuple:
        if self.interpolation == "linear":
            return tuple(t for t in self.taus if t > 0.0)
        return ()

    def scaled_omega_squared(self, tau: ArrayLike) -> ArrayLike:
        t = np.asarray(tau, dtype=float)
        if np.any(t < self.taus[0]) or np.any(t > self.taus[-1]):
            raise OutOfDomain(
                f"tau = {tau} outside tabulated range [{self.taus[0]}, {self.taus[-1]}]"
            )
        w2 = np.asarray(self._interp(t), dtype=float) / self._w2_at_zero()
        w2 = self._check_positive(w2, tau)
        return w2 if np.ndim(tau) else float(w2)


def omega_squared(protocol: FrequencyProtocol, tau: ArrayLike) -> ArrayLike:
    """Physical squared frequency of ``protocol`` at dimensionless time tau.

    Raises NonPositiveFrequency if w^2 <= 0 and OutOfDomain for tabulated
    protocols evaluated outside their sample range.
    """
    w2 = protocol.omega_squared(tau)
    if np.any(np.asarray(w2) <= 0.0):
        raise NonPositiveFrequency(f"w^2 = {w2} at tau = {tau}")
    return w2


def mathieu_scale(w0: float, a_bar: float, q_bar: float) -> float:
    """Time scale phi (rad/s) linking the drive parameters to a physical w0.

    Chosen so that the trap starts at its physical frequency:
    w(0) = phi * sqrt(a_bar - 2 q_bar) = w0.
    """
    disc = a_bar - 2.0 * q_bar
    if disc <= 0:
        raise DegenerateProtocol(f"a_bar - 2 q_bar = {disc} <= 0")
    if w0 <= 0:
        raise NonPositiveFrequency(f"w0 = {w0} must be > 0")
    return w0 / math.sqrt(disc)


@dataclass(frozen=True)
class ThermalConfig:
    """Initial thermal equilibrium state of the oscillator.

    Fields are mutually consistent:
      nbar = 1 / (exp(beta * hbar * w0) - 1)
      e0   = hbar * w0 * (nbar + 1/2)  =  (hbar w0 / 2) coth(beta hbar w0 / 2)
    ``units`` records the unit system the numbers are expressed in; in
    dimensionless units hbar = k_B = 1.
    """

    w0: float
    temperature: float
    nbar: float
    beta: float
    e0: float
    units: UnitSystem = field(default=SI, repr=False)


def _nbar_from_x(x: float) -> float:
    """Bose occupation 1/(e^x - 1), stable for both small and large x."""
    if x < 1.0:
        return 1.0 / math.expm1(x)
    emx = math.exp(-x)
    return emx / (1.0 - emx)


def thermal_config(w0: float, temperature: float,
                   units: UnitSystem = SI) -> ThermalConfig:
    """Thermal state parameters for a trap at w0 (rad/s) and bath temperature T.

    T = 0 is the ground-state limit (nbar = 0 exactly, no Bose factor is
    evaluated).  Raises InvalidTemperature for T < 0.
    """
    if w0 <= 0:
        raise NonPositiveFrequency(f"w0 = {w0} must be > 0")
    if temperature < 0:
        raise InvalidTemperature(f"T = {temperature} K")
    if temperature == 0.0:
        return ThermalConfig(w0=w0, temperature=0.0, nbar=0.0, beta=math.inf,
                             e0=0.5 * units.hbar * w0, units=units)
    beta = 1.0 / (units.k_b * temperature)
    x = beta * units.hbar * w0
    nbar = _nbar_from_x(x)
    e0 = units.hbar * w0 * (nbar + 0.5)
    return ThermalConfig(w0=w0, temperature=temperature, nbar=nbar, beta=beta,
                         e0=e0, units=units)


def thermal_config_from_nbar(w0: float, nbar: float,
                             units: UnitSystem = SI) -> ThermalConfig:
    """Thermal state fixed by its mean occupation instead of the temperature."""
    if w0 <= 0:
        raise NonPositiveFrequency(f"w0 = {w0} must be > 0")
    if nbar < 0:
        raise InvalidTemperature(f"nbar = {nbar} must be >= 0")
    if nbar == 0.0:
        return ThermalConfig(w0=w0, temperature=0.0, nbar=0.0, beta=math.inf,
                             e0=0.5 * units.hbar * w0, units=units)
    x = math.log1p(1.0 / nbar)  # beta * hbar * w0
    beta = x / (units.hbar * w0)
    temperature = 1.0 / (units.k_b * beta)
    e0 = units.hbar * w0 * (nbar + 0.5)
    return ThermalConfig(w0=w0, temperature=temperature, nbar=nbar, beta=beta,
                         e0=e0, units=units)
