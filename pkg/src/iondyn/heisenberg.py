"""Observables built from the fundamental solutions.

The central object is the dimensionless triple (Q, Q1, Q2): Q is Husimi's
non-adiabaticity parameter (mean energy in units of the adiabatic energy),
Q1 and Q2 track the Lagrangian-like and position-momentum-correlation means.
The Wronskian condition forces the hyperbolic identity

    Q^2 - Q1^2 - Q2^2 = 1,

so Q >= 1 always, with Q = 1 for adiabatic evolution.  From the triple follow
the covariance-matrix entries of the evolved Gaussian state, the classicality
witness C, and its critical threshold.

All functions are pure; frequencies must be given in units consistent with
the state's time base (scaled frequencies for states integrated in tau).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonPositiveFrequency
from .integrator import FundamentalState
from .model import ThermalConfig

# Q values this far below 1 are treated as roundoff and clamped.
Q_CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class QTriple:
    """Non-adiabaticity triple; satisfies q^2 - q1^2 - q2^2 = 1."""

    q: float
    q1: float
    q2: float

    def identity_residual(self) -> float:
        return self.q**2 - self.q1**2 - self.q2**2 - 1.0


@dataclass(frozen=True)
class CovarianceState:
    """Second moments of the evolved state in the instantaneous mode basis.

    The 2x2 covariance matrix is [[n + 1/2, m], [conj(m), n + 1/2]]; the
    mean energy, Lagrangian and correlation values are in the energy units
    of the thermal config that produced them.
    """

    n: float
    m: complex
    w: float
    mean_h: float
    mean_l: float
    mean_co: float

    def matrix(self) -> np.ndarray:
        d = self.n + 0.5
        return np.array([[d, self.m], [np.conj(self.m), d]])

    def min_eigenvalue(self) -> float:
        return self.n + 0.5 - abs(self.m)


def q_components(u, du, v, dv, w0, w):
    """Raw triple from fundamental-solution values (array friendly)."""
    pref = 1.0 / (2.0 * w0 * w)
    q = pref * (w0**2 * (dv**2 + w**2 * v**2) + w**2 * u**2 + du**2)
    q1 = pref * (w0**2 * (dv**2 - w**2 * v**2) + du**2 - w**2 * u**2)
    q2 = pref * (2.0 * w * u * du + 2.0 * w * w0**2 * v * dv)
    return q, q1, q2


def q_triple(state: FundamentalState, w0: float, w: float) -> QTriple:
    """Non-adiabaticity triple at one instant.

    ``w0`` is the initial frequency and ``w`` the current one, both in the
    state's (scaled) units.
    """
    if w0 <= 0 or w <= 0:
        raise NonPositiveFrequency(f"w0 = {w0}, w = {w}")
    q, q1, q2 = q_components(state.u, state.du, state.v, state.dv, w0, w)
    return QTriple(q=float(q), q1=float(q1), q2=float(q2))


def q_triple_trajectory(traj, w_of_tau=None):
    """Triple along a whole trajectory; returns (q, q1, q2) arrays.

    ``w_of_tau`` defaults to the trajectory protocol's scaled frequency.
    """
    if w_of_tau is None:
        w = np.sqrt(traj.protocol.scaled_omega_squared(traj.taus))
        w0 = traj.protocol.w0_scaled
    else:
        w = w_of_tau(traj.taus)
        w0 = w[0]
    return q_components(traj.u, traj.du, traj.v, traj.dv, w0, w)


def mean_values(triple: QTriple, thermal: ThermalConfig, w: float):
    """Mean energy, Lagrangian and position-momentum correlation.

    Returned in the energy units of ``thermal`` (joules in SI); ``w`` must be
    in the same units as ``thermal.w0``.
    """
    pref = (w / thermal.w0) * thermal.e0
    return pref * triple.q, pref * triple.q1, pref * triple.q2


def covariance(triple: QTriple, thermal: ThermalConfig,
               w: float) -> CovarianceState:
    """Covariance entries of the evolved Gaussian state.

    n + 1/2 = (nbar + 1/2) Q and m = -(nbar + 1/2)(Q1 - i Q2); the purity of
    unitary evolution keeps (n + 1/2)^2 - |m|^2 = (nbar + 1/2)^2.
    """
    x = thermal.nbar + 0.5
    n = x * triple.q - 0.5
    m = -x * (triple.q1 - 1j * triple.q2)
    mh, ml, mco = mean_values(triple, thermal, w)
    return CovarianceState(n=n, m=m, w=w, mean_h=mh, mean_l=ml, mean_co=mco)


def variances(state: FundamentalState, thermal: ThermalConfig,
              mass: float = 1.0):
    """Position and momentum variances (Delta x^2, Delta p^2).

    ``thermal.w0`` must be expressed in the state's time base: pass a
    dimensionless ThermalConfig for states integrated in scaled time.  In
    dimensionless units (hbar = mass = w0 = 1) the vacuum gives (1/2, 1/2).
    """
    w0 = thermal.w0
    dx2 = (thermal.e0 / mass) * (state.u**2 / w0**2 + state.v**2)
    dp2 = mass * thermal.e0 * (state.du**2 / w0**2 + state.dv**2)
    return dx2, dp2


def _clamped_q(q, tol: float):
    q = np.asarray(q, dtype=float)
    if np.any(q < 1.0 - tol):
        bad = float(np.min(q))
        raise DomainError(f"Q = {bad} < 1 beyond tolerance {tol:g}")
    return np.maximum(q, 1.0)


def classicality(nbar, q, clamp_tol: float = Q_CLAMP_TOL):
    """Classicality witness C(nbar, Q) = (nbar + 1/2)[Q - sqrt(Q^2 - 1)] - 1/2.

    C > 0: the evolved Gaussian state is classical (positive P-function);
    C < 0: non-classical.  C decreases from nbar at Q = 1 towards -1/2 as
    Q -> inf.  Accepts arrays.  Q below 1 by more than ``clamp_tol`` raises
    DomainError; smaller dips are clamped to 1 (roundoff guard).
    """
    if np.any(np.asarray(nbar) < 0):
        raise DomainError("nbar must be >= 0")
    q = _clamped_q(q, clamp_tol)
    # Q - sqrt(Q^2-1) computed as 1/(Q + sqrt(Q^2-1)): no cancellation
    bracket = 1.0 / (q + np.sqrt(q * q - 1.0))
    c = (np.asarray(nbar) + 0.5) * bracket - 0.5
    return c if c.ndim else float(c)


def critical_q(nbar):
    """Threshold Q above which the evolved state turns non-classical.

    Solves C(nbar, Q) = 0: Q_c = [(nbar + 1/2)^2 + 1/4] / (nbar + 1/2).
    Q_c(0) = 1 (any non-adiabaticity makes the vacuum non-classical) and
    Q_c ~ nbar for large occupations.
    """
    if np.any(np.asarray(nbar) < 0):
        raise DomainError("nbar must be >= 0")
    x = np.asarray(nbar, dtype=float) + 0.5
    qc = x + 0.25 / x
    return qc if qc.ndim else float(qc)


def bogoliubov_r(w0: float, w: float) -> float:
    """Squeeze parameter relating the instantaneous mode at w to the one at w0.

    r_a = (1/2) ln(w / w0); antisymmetric under exchange of its arguments.
    """
    if w0 <= 0 or w <= 0:
        raise NonPositiveFrequency(f"w0 = {w0}, w = {w}")
    return 0.5 * math.log(w / w0)
