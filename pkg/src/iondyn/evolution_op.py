"""Squeeze x rotation factorization of the time evolution operator.

The evolved annihilation operator is a Bogoliubov mix  a -> f a + g a*  with
|f|^2 - |g|^2 = 1; f and g follow directly from the fundamental solutions.
Writing the evolution as a squeeze (magnitude r, phase theta) followed by a
rotation (angle gamma) gives

    f = e^{-i gamma} cosh r,      g = -e^{i (theta + gamma)} sinh r,

so r = arccosh|f|, gamma = -arg f, theta = arg f + arg g + pi.  The same
(Q, Q1, Q2) triple as in heisenberg.py can be rebuilt from (r, theta) plus
the instantaneous-mode squeeze r_a; the two routes agreeing componentwise is
the main cross-check of the whole pipeline.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IdentityViolation, NonPositiveFrequency
from .heisenberg import QTriple
from .integrator import FundamentalState

# |f|^2 - |g|^2 residuals above this signal a broken trajectory upstream.
FG_RESIDUAL_LIMIT = 1e-6

# |f| may round below 1 by this much and still be clamped instead of raising.
F_CLAMP_LIMIT = 1e-6


@dataclass(frozen=True)
class EvolutionParams:
    """Bogoliubov amplitudes and the squeeze/rotation decomposition.

    Angles are on the principal branch (-pi, pi]; at r = 0 the squeeze phase
    is undefined and fixed to theta = 0.
    """

    f: complex
    g: complex
    r: float
    theta: float
    gamma: float

    def fg_residual(self) -> float:
        return abs(self.f) ** 2 - abs(self.g) ** 2 - 1.0


@dataclass(frozen=True)
class SqueezedThermalParams:
    """Parameters of the squeezed thermal state reached by the evolution.

    beta_s is the generalized inverse temperature, mu the chemical-like
    potential (0 <= mu < 1), theta the squeeze phase of the quadratic term.
    """

    beta_s: float
    mu: float
    theta: float


def principal_branch(angle):
    """Reduce an angle to (-pi, pi]."""
    a = np.mod(np.asarray(angle) + np.pi, 2.0 * np.pi) - np.pi
    a = np.where(a == -np.pi, np.pi, a)
    return a if a.ndim else float(a)


def fg_arrays(u, du, v, dv, w0):
    """Bogoliubov amplitudes from fundamental-solution values (array friendly)."""
    f = 0.5 * (u + dv) - 0.5j * (w0 * v - du / w0)
    g = 0.5 * (u - dv) + 0.5j * (w0 * v + du / w0)
    return f, g


def fg_from_state(state: FundamentalState, w0: float):
    """Amplitudes (f, g) of the evolved annihilation operator.

    Enforces |f|^2 - |g|^2 = 1; a residual above 1e-6 raises
    IdentityViolation, signalling integrator failure upstream (the residual
    equals the Wronskian drift exactly).
    """
    if w0 <= 0:
        raise NonPositiveFrequency(f"w0 = {w0}")
    f, g = fg_arrays(state.u, state.du, state.v, state.dv, w0)
    f, g = complex(f), complex(g)
    residual = abs(f) ** 2 - abs(g) ** 2 - 1.0
    if abs(residual) > FG_RESIDUAL_LIMIT:
        raise IdentityViolation(
            f"|f|^2 - |g|^2 - 1 = {residual:.3e} at tau = {state.tau}"
        )
    return f, g


def squeeze_params(f: complex, g: complex):
    """Squeeze magnitude and phase plus rotation angle from (f, g).

    r = arccosh|f| >= 0; gamma = -arg f; theta = arg f + arg g + pi, all
    reduced to (-pi, pi], with theta = 0 by convention when the squeeze
    vanishes.  |f| below 1 - 1e-6 raises DomainError; smaller dips clamp.

    r is evaluated as arcsinh|g|, which equals arccosh|f| under the unit
    constraint but stays well conditioned at r = 0 (arccosh amplifies
    constraint noise eps into sqrt(eps) there).
    """
    af = abs(f)
    if af < 1.0 - F_CLAMP_LIMIT:
        raise DomainError(f"|f| = {af} < 1 beyond tolerance")
    r = math.asinh(abs(g))
    gamma = principal_branch(-cmath.phase(f))
    if r == 0.0 or g == 0:
        theta = 0.0
    else:
        theta = principal_branch(cmath.phase(f) + cmath.phase(g) + math.pi)
    return r, theta, gamma


def squeeze_arrays(f, g):
    """Vectorized squeeze_params over arrays of amplitudes."""
    af = np.abs(f)
    if np.any(af < 1.0 - F_CLAMP_LIMIT):
        raise DomainError(f"|f| = {af.min()} < 1 beyond tolerance")
    r = np.arcsinh(np.abs(g))
    gamma = principal_branch(-np.angle(f))
    theta = principal_branch(np.angle(f) + np.angle(g) + np.pi)
    theta = np.where((r == 0.0) | (g == 0), 0.0, theta)
    return r, theta, gamma


def evolution_params(state: FundamentalState, w0: float) -> EvolutionParams:
    """Full decomposition of the evolution operator at one instant."""
    f, g = fg_from_state(state, w0)
    r, theta, gamma = squeeze_params(f, g)
    return EvolutionParams(f=f, g=g, r=r, theta=theta, gamma=gamma)


def bar_q_triple(r, theta, r_a) -> QTriple:
    """Rebuild the non-adiabaticity triple from (r, theta, r_a).

    With the factorization's sign conventions the correlation component is
    -sinh(2r) sin(theta); the opposite sign would break the componentwise
    equality with the triple computed from the fundamental solutions.
    Equals (1, 0, 0) exactly when theta = 0 and r = r_a (adiabatic tracking).
    """
    if np.any(np.asarray(r) < 0):
        raise DomainError("r must be >= 0")
    c2r, s2r = np.cosh(2 * np.asarray(r)), np.sinh(2 * np.asarray(r))
    c2a, s2a = np.cosh(2 * np.asarray(r_a)), np.sinh(2 * np.asarray(r_a))
    ct, st = np.cos(theta), np.sin(theta)
    q = c2r * c2a - s2r * s2a * ct
    q1 = s2r * c2a * ct - c2r * s2a
    q2 = -s2r * st
    if np.ndim(q):
        return q, q1, q2
    return QTriple(q=float(q), q1=float(q1), q2=float(q2))


def squeezed_thermal(beta: float, r: float,
                     theta: float) -> SqueezedThermalParams:
    """Squeezed-thermal description of the state after the evolution.

    beta_s = beta cosh(2r) and mu = tanh(2r); a vanishing squeeze returns
    the original thermal state (beta_s = beta, mu = 0).
    """
    if beta <= 0:
        raise DomainError(f"beta = {beta} must be > 0")
    if r < 0:
        raise DomainError(f"r = {r} must be >= 0")
    return SqueezedThermalParams(beta_s=beta * math.cosh(2 * r),
                                 mu=math.tanh(2 * r), theta=theta)
