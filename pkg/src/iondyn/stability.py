"""Floquet stability classification of the periodically driven trap.

The drive  x'' + (a_bar - 2 q_bar cos 2 tau) x = 0  has period pi in tau.
Integrating both fundamental solutions over one period gives the monodromy
matrix; its trace decides the fate of every solution: |trace| < 2 bounded
(stable), |trace| > 2 exponential growth (unstable), |trace| = 2 marginal.
The classification is purely numerical; no characteristic-value series are
used.  Unlike the simulation protocols, negative w^2 is allowed here: the
classification is well defined for any real coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StepFailure

PERIOD = math.pi

# Traces within this band of +-2 are labeled marginal (exact boundaries are
# measure zero; callers may treat marginal as stable for plotting).
MARGINAL_BAND = 1e-9

STABLE = "stable"
MARGINAL = "marginal"
UNSTABLE = "unstable"


@dataclass(frozen=True)
class MonodromyResult:
    """One-period propagator of the driven oscillator at a parameter point.

    ``exponent`` is the growth rate per period of the fastest Floquet
    multiplier, ln max|lambda| (zero in the stable band).
    """

    a_bar: float
    q_bar: float
    u: float
    du: float
    v: float
    dv: float
    trace: float
    det: float
    classification: str
    exponent: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.u, self.v], [self.du, self.dv]])


def _classify(trace: float) -> str:
    if abs(abs(trace) - 2.0) <= MARGINAL_BAND:
        return MARGINAL
    return STABLE if abs(trace) < 2.0 else UNSTABLE


def _exponent(trace: float) -> float:
    half = abs(trace) / 2.0
    if half <= 1.0:
        return 0.0
    return math.acosh(half)


def monodromy(a_bar: float, q_bar: float,
              tolerance: float = 1e-11) -> MonodromyResult:
    """Integrate one drive period from both fundamental initial conditions."""

    def rhs(t, y):
        w2 = a_bar - 2.0 * q_bar * math.cos(2.0 * t)
        return (y[1], -w2 * y[0], y[3], -w2 * y[2])

    sol = solve_ivp(rhs, (0.0, PERIOD), [1.0, 0.0, 0.0, 1.0],
                    method="DOP853", rtol=tolerance, atol=tolerance * 1e-3)
    if not sol.success:
        raise StepFailure(sol.message)
    u, du, v, dv = (float(x) for x in sol.y[:, -1])
    trace = u + dv
    det = u * dv - du * v
    return MonodromyResult(a_bar=a_bar, q_bar=q_bar, u=u, du=du, v=v, dv=dv,
                           trace=trace, det=det,
                           classification=_classify(trace),
                           exponent=_exponent(trace))


def scan(a_range, q_range, a_steps: int, q_steps: int,
         tolerance: float = 1e-10) -> list:
    """Classify a rectangular grid of drive parameters.

    Returns a row-major list of MonodromyResult: rows run over q_bar values,
    columns over a_bar values, both endpoints included.  Grid points are
    independent, and the ordering is fixed by the grid indices.
    """
    a_lo, a_hi = (float(x) for x in a_range)
    q_lo, q_hi = (float(x) for x in q_range)
    if not (math.isfinite(a_lo) and math.isfinite(a_hi)
            and math.isfinite(q_lo) and math.isfinite(q_hi)):
        raise ValueError("ranges must be finite")
    if a_steps < 2 or q_steps < 2:
        raise ValueError("need >= 2 grid points per axis")
    a_values = np.linspace(a_lo, a_hi, a_steps)
    q_values = np.linspace(q_lo, q_hi, q_steps)
    return [monodromy(float(a), float(q), tolerance=tolerance)
            for q in q_values for a in a_values]
