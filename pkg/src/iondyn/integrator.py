"""Integration of the fundamental solutions of the oscillator equation.

Two real solutions of  x'' + w^2(tau) x = 0  are propagated jointly: the
cosine-like solution u with u(0) = 1, u'(0) = 0 and the sine-like solution v
with v(0) = 0, v'(0) = 1 (primes are d/dtau).  Together they form the
symplectic propagator of the classical flow; its determinant, the Wronskian
u v' - u' v, must stay at 1 and is monitored at every output sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import GrowthOverflow, StepFailure
from .model import FrequencyProtocol

# Beyond this magnitude the Wronskian check loses all precision in doubles.
OVERFLOW_LIMIT = 1e12

DEFAULT_TOLERANCE = 1e-11
DEFAULT_SAMPLES = 2000

# Drift bound: |W - 1| <= WRONSKIAN_FACTOR * tolerance, relaxed by the
# magnitude of the bilinear products once they dwarf 1 (roundoff floor).
WRONSKIAN_FACTOR = 100.0


@dataclass(frozen=True)
class FundamentalState:
    """Both fundamental solutions and their tau-derivatives at one instant."""

    tau: float
    u: float
    du: float
    v: float
    dv: float

    def __post_init__(self):
        for name in ("tau", "u", "du", "v", "dv"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"non-finite {name} in FundamentalState")

    def wronskian(self) -> float:
        return self.u * self.dv - self.du * self.v


def wronskian(state: FundamentalState) -> float:
    """u v' - u' v; equals 1 for any physical propagator."""
    return state.wronskian()


def sudden_jump_state(w0: float, w1: float) -> FundamentalState:
    """State at the instant of an idealized sudden jump w0 -> w1.

    The jump is instantaneous, so the propagator is the identity; the change
    of frequency only enters downstream evaluations that use w = w1.
    """
    if w0 <= 0 or w1 <= 0:
        raise ValueError("frequencies must be > 0")
    return FundamentalState(tau=0.0, u=1.0, du=0.0, v=0.0, dv=1.0)


@dataclass(frozen=True)
class Trajectory:
    """Fundamental solutions sampled on an output grid.

    ``states`` has one row per sample with columns (u, u', v, v').
    ``metadata`` records integration statistics, including the raw maximum
    Wronskian drift over all samples.
    """

    taus: np.ndarray
    states: np.ndarray
    protocol: FrequencyProtocol
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.taus)

    @property
    def u(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def du(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def v(self) -> np.ndarray:
        return self.states[:, 2]

    @property
    def dv(self) -> np.ndarray:
        return self.states[:, 3]

    def wronskians(self) -> np.ndarray:
        return self.u * self.dv - self.du * self.v

    def state_at(self, i: int) -> FundamentalState:
        u, du, v, dv = self.states[i]
        return FundamentalState(tau=float(self.taus[i]), u=float(u),
                                du=float(du), v=float(v), dv=float(dv))

    def __iter__(self):
        return (self.state_at(i) for i in range(len(self)))


def _segment_bounds(protocol: FrequencyProtocol, tau_end: float) -> list:
    cuts = sorted({b for b in protocol.breakpoints if 0.0 < b < tau_end})
    edges = [0.0] + cuts + [tau_end]
    return list(zip(edges[:-1], edges[1:]))


def _overflow_events():
    def ev_u(t, y):
        return OVERFLOW_LIMIT - abs(y[0])

    def ev_v(t, y):
        return OVERFLOW_LIMIT - abs(y[2])

    ev_u.terminal = True
    ev_v.terminal = True
    return [ev_u, ev_v]


def integrate(protocol: FrequencyProtocol, tau_end: float,
              output_grid=None, tolerance: float = DEFAULT_TOLERANCE,
              method: str = "DOP853") -> Trajectory:
    """Propagate the fundamental solutions over tau in [0, tau_end].

    Parameters
    ----------
    protocol : FrequencyProtocol
        Must be valid on [0, tau_end]; protocol errors propagate unchanged.
    tau_end : float
        End of the integration window (dimensionless time), > 0.
    output_grid : array of tau, optional
        Strictly increasing, starting at exactly 0.0.  Default: 2000 uniform
        samples on [0, tau_end].
    tolerance : float
        Relative local error, in [1e-13, 1e-4].
    method : str
        Any scipy adaptive RK method; default DOP853.

    The integration is split at the protocol's breakpoints (frequency jumps
    and ramp kinks) so no step crosses a discontinuity.  Raises
    GrowthOverflow once |u| or |v| exceeds 1e12 and StepFailure if the step
    controller fails or the Wronskian drifts beyond 100x tolerance.  The
    drift bound is widened proportionally once |u|, |v| >> 1 (roundoff in
    the bilinear form) or tau_end >> 100 (drift accumulates linearly with
    the number of steps; the strict bound holds on desk-scale windows).
    """
    if tau_end <= 0:
        raise ValueError(f"tau_end = {tau_end} must be > 0")
    if not 1e-13 <= tolerance <= 1e-4:
        raise ValueError(f"tolerance = {tolerance} outside [1e-13, 1e-4]")
    if output_grid is None:
        grid = np.linspace(0.0, tau_end, DEFAULT_SAMPLES)
    else:
        grid = np.asarray(output_grid, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise ValueError("output_grid must be 1-d with >= 2 points")
        if grid[0] != 0.0:
            raise ValueError("output_grid must start at exactly 0.0")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("output_grid must be strictly increasing")
        if grid[-1] > tau_end:
            raise ValueError("output_grid extends past tau_end")

    events = _overflow_events()
    y = np.array([1.0, 0.0, 0.0, 1.0])
    rows = [y.copy()]  # exact initial conditions at grid[0] = 0
    nfev = 0
    atol = tolerance * 1e-3

    for start, end in _segment_bounds(protocol, tau_end):
        # Stage evaluations at the exact segment edges must see the
        # one-sided limit from inside the segment, not the value the
        # protocol assigns to a discontinuity point itself.
        lo = start + (end - start) * 1e-13
        hi = end - (end - start) * 1e-13

        def rhs(t, y, lo=lo, hi=hi):
            w2 = protocol.scaled_omega_squared(min(max(t, lo), hi))
            return (y[1], -w2 * y[0], y[3], -w2 * y[2])

        mask = (grid > start) & (grid <= end)
        t_eval = grid[mask]
        want_end = t_eval.size > 0 and t_eval[-1] == end
        if not want_end:
            t_eval = np.append(t_eval, end)
        sol = solve_ivp(rhs, (start, end), y, method=method, t_eval=t_eval,
                        rtol=tolerance, atol=atol, events=events,
                        dense_output=False)
        nfev += sol.nfev
        if sol.status == -1:
            raise StepFailure(sol.message)
        if sol.status == 1:
            tau_hit = min(te[0] for te in sol.t_events if te.size)
            raise GrowthOverflow(tau_reached=float(tau_hit),
                                 limit=OVERFLOW_LIMIT)
        out = sol.y.T if want_end else sol.y.T[:-1]
        rows.extend(out)
        y = sol.y[:, -1].copy()

    states = np.vstack(rows)
    # grid[0] row was injected exactly; remaining rows follow grid order
    if states.shape[0] != grid.size:
        raise StepFailure("integrator returned wrong number of samples")

    w = states[:, 0] * states[:, 3] - states[:, 1] * states[:, 2]
    drift = np.abs(w - 1.0)
    scale = np.maximum(1.0, np.abs(states[:, 0] * states[:, 3])
                       + np.abs(states[:, 1] * states[:, 2]))
    length_factor = max(1.0, tau_end / 100.0)
    bound = WRONSKIAN_FACTOR * tolerance * scale * length_factor
    if np.any(drift > bound):
        i = int(np.argmax(drift / bound))
        raise StepFailure(
            f"Wronskian drift {drift[i]:.3e} at tau = {grid[i]:.6g} "
            f"exceeds {bound[i]:.3e}"
        )

    meta = {
        "method": method,
        "tolerance": tolerance,
        "nfev": int(nfev),
        "max_wronskian_drift": float(drift.max()),
    }
    return Trajectory(taus=grid, states=states, protocol=protocol,
                      metadata=meta)


def integrate_fixed(protocol: FrequencyProtocol, tau_end: float,
                    n_steps: int, output_every: int = 1) -> Trajectory:
    """Classical fixed-step RK4, for deterministic regression baselines.

    Intended for smooth protocols; a step crossing a breakpoint degrades the
    nominal fourth-order convergence.
    """
    if tau_end <= 0 or n_steps < 1:
        raise ValueError("need tau_end > 0 and n_steps >= 1")

    def deriv(t, y):
        w2 = protocol.scaled_omega_squared(t)
        return np.array([y[1], -w2 * y[0], y[3], -w2 * y[2]])

    h = tau_end / n_steps
    y = np.array([1.0, 0.0, 0.0, 1.0])
    taus = [0.0]
    rows = [y.copy()]
    for k in range(n_steps):
        t = k * h
        k1 = deriv(t, y)
        k2 = deriv(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = deriv(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = deriv(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if np.max(np.abs(y[[0, 2]])) > OVERFLOW_LIMIT:
            raise GrowthOverflow(tau_reached=(k + 1) * h, limit=OVERFLOW_LIMIT)
        if (k + 1) % output_every == 0 or k == n_steps - 1:
            taus.append((k + 1) * h)
            rows.append(y.copy())

    states = np.vstack(rows)
    w = states[:, 0] * states[:, 3] - states[:, 1] * states[:, 2]
    meta = {
        "method": "RK4",
        "n_steps": n_steps,
        "max_wronskian_drift": float(np.abs(w - 1.0).max()),
    }
    return Trajectory(taus=np.asarray(taus), states=states,
                      protocol=protocol, metadata=meta)
