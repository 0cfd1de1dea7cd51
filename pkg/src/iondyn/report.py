"""Simulation driver: integrate a protocol and derive all reported columns.

One run produces a per-sample table with the fundamental solutions, the
non-adiabaticity triple, the classicality witness, covariance entries, and
the squeeze/rotation parameters, plus run metadata with the maxima of the
conserved-identity residuals.  Output is CSV with a #-prefixed metadata
block; files are written atomically (temp file + rename).
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import evolution_op, heisenberg
from .integrator import integrate
from .model import FrequencyProtocol, ThermalConfig

COLUMNS = ("tau", "w", "u", "du", "v", "dv", "Q", "Q1", "Q2", "C",
           "n_H", "abs_m_H", "r", "theta", "gamma", "r_a", "nonclassical")

DEFAULT_TAU_END = 12.0 * math.pi
DEFAULT_SAMPLES = 4000


@dataclass
class RunReport:
    """Column arrays plus metadata for one simulation run."""

    columns: dict
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.columns["tau"])

    def summary(self) -> dict:
        m = self.metadata
        return {
            "samples": len(self),
            "nbar": m["nbar"],
            "q_critical": m["q_critical"],
            "max_Q": m["max_Q"],
            "min_C": m["min_C"],
            "first_tau_nonclassical": m["first_tau_nonclassical"],
            "max_wronskian_drift": m["max_wronskian_drift"],
            "max_q_identity_residual": m["max_q_identity_residual"],
            "max_fg_residual": m["max_fg_residual"],
        }

    def write_csv(self, path) -> None:
        lines = ["# iondyn simulation report"]
        for key in sorted(self.metadata):
            lines.append(f"# {key}: {self.metadata[key]}")
        lines.append(",".join(COLUMNS))
        cols = [self.columns[name] for name in COLUMNS]
        for row in zip(*cols):
            lines.append(",".join(_fmt(x) for x in row))
        _atomic_write(path, "\n".join(lines) + "\n")


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    return format(float(x), ".17g")


def _atomic_write(path, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_simulation(protocol: FrequencyProtocol, thermal: ThermalConfig,
                   tau_end: float = DEFAULT_TAU_END,
                   samples: int = DEFAULT_SAMPLES,
                   tolerance: float = 1e-11) -> RunReport:
    """Integrate ``protocol`` and tabulate every derived quantity.

    ``thermal`` sets the initial occupation; only its nbar enters the
    reported columns, so SI and dimensionless configs give identical tables.
    The w column is physical (rad/s).  Q is reported raw; the classicality
    witness and covariance entries use Q clamped at 1 (Q >= 1 analytically;
    dips below are integrator roundoff).
    """
    grid = np.linspace(0.0, tau_end, samples)
    traj = integrate(protocol, tau_end, output_grid=grid,
                     tolerance=tolerance)

    w_scaled = np.sqrt(protocol.scaled_omega_squared(grid))
    w0_scaled = protocol.w0_scaled
    nbar = thermal.nbar

    q, q1, q2 = heisenberg.q_components(traj.u, traj.du, traj.v, traj.dv,
                                        w0_scaled, w_scaled)
    q_identity = q * q - q1 * q1 - q2 * q2 - 1.0

    qc = np.maximum(q, 1.0)
    x = nbar + 0.5
    c = heisenberg.classicality(nbar, qc)
    n_h = x * qc - 0.5
    abs_m = x * np.sqrt(qc * qc - 1.0)

    f, g = evolution_op.fg_arrays(traj.u, traj.du, traj.v, traj.dv, w0_scaled)
    fg_residual = np.abs(f) ** 2 - np.abs(g) ** 2 - 1.0
    r, theta, gamma = evolution_op.squeeze_arrays(f, g)
    r_a = 0.5 * np.log(w_scaled / w0_scaled)

    nonclassical = c < 0.0
    first_idx = np.flatnonzero(nonclassical)
    first_tau = float(grid[first_idx[0]]) if first_idx.size else None

    columns = {
        "tau": grid,
        "w": protocol.phi * w_scaled,
        "u": traj.u, "du": traj.du, "v": traj.v, "dv": traj.dv,
        "Q": q, "Q1": q1, "Q2": q2,
        "C": c, "n_H": n_h, "abs_m_H": abs_m,
        "r": r, "theta": theta, "gamma": gamma, "r_a": r_a,
        "nonclassical": nonclassical,
    }
    metadata = {
        "protocol": repr(protocol),
        "phi_rad_per_s": protocol.phi,
        "w0_rad_per_s": protocol.w_initial,
        "nbar": nbar,
        "temperature_k": thermal.temperature,
        "q_critical": heisenberg.critical_q(nbar),
        "tau_end": tau_end,
        "samples": samples,
        "tolerance": tolerance,
        "max_Q": float(q.max()),
        "min_C": float(c.min()),
        "first_tau_nonclassical": first_tau,
        "max_wronskian_drift": traj.metadata["max_wronskian_drift"],
        "max_q_identity_residual": float(np.abs(q_identity).max()),
        "max_fg_residual": float(np.abs(fg_residual).max()),
    }
    return RunReport(columns=columns, metadata=metadata)


def write_scan_csv(results, path) -> None:
    """Stability scan as rectangular CSV (a_bar, q_bar, trace, classification)."""
    lines = ["a_bar,q_bar,trace,classification"]
    for res in results:
        lines.append(f"{_fmt(res.a_bar)},{_fmt(res.q_bar)},"
                     f"{_fmt(res.trace)},{res.classification}")
    _atomic_write(path, "\n".join(lines) + "\n")


def summary_to_json(report: RunReport, path) -> None:
    _atomic_write(path, json.dumps(report.summary(), indent=2) + "\n")
