"""Shared protocol suite and integrated trajectories.

The suite spans the full protocol zoo: constant traps, ramps (up, down,
slow), sudden jumps (up, down, null), tabulated curves with both
interpolants, and eleven drive points covering the stable band, the edge of
a resonance tongue, and three unstable points.  Windows for the unstable
points are chosen so the solutions stay small enough that the conserved
bilinear identities remain checkable in double precision.
"""

import math

import numpy as np
import pytest

from iondyn import (
    ConstantProtocol,
    LinearRampProtocol,
    MathieuProtocol,
    SuddenJumpProtocol,
    TabulatedProtocol,
    integrate,
)

PI = math.pi

_TAB_TAUS = tuple(np.linspace(0.0, 4 * PI, 61))
_TAB_W2 = tuple(1.0 + 0.8 * np.sin(0.5 * np.asarray(_TAB_TAUS)) ** 2
                + 0.3 * np.sin(0.21 * np.asarray(_TAB_TAUS)))

# (label, protocol, tau_end)
PROTOCOL_SUITE = [
    ("constant-1", ConstantProtocol(1.0), 4 * PI),
    ("constant-si", ConstantProtocol(2 * PI * 4e6), 4 * PI),
    ("ramp-up", LinearRampProtocol(1.0, 2.0, 4 * PI), 8 * PI),
    ("ramp-down", LinearRampProtocol(1.0, 0.5, 6 * PI), 10 * PI),
    ("ramp-slow", LinearRampProtocol(1.0, 3.0, 20 * PI), 24 * PI),
    ("jump-up", SuddenJumpProtocol(1.0, 2.0, 1.0), 4 * PI),
    ("jump-down", SuddenJumpProtocol(1.0, 0.5, 2.0), 6 * PI),
    ("jump-null", SuddenJumpProtocol(1.0, 1.0, 1.0), 2 * PI),
    ("tab-pchip", TabulatedProtocol(_TAB_TAUS, _TAB_W2, "pchip"), 4 * PI),
    ("tab-linear", TabulatedProtocol(_TAB_TAUS, _TAB_W2, "linear"), 4 * PI),
    ("mathieu-6.0-0.5", MathieuProtocol(6.0, 0.5), 12 * PI),
    ("mathieu-12.0-1.0", MathieuProtocol(12.0, 1.0), 12 * PI),
    ("mathieu-2.5-1.0", MathieuProtocol(2.5, 1.0), 12 * PI),
    ("mathieu-3.0-0.5", MathieuProtocol(3.0, 0.5), 12 * PI),
    ("mathieu-6.0-2.5", MathieuProtocol(6.0, 2.5), 12 * PI),
    ("mathieu-10.0-2.0", MathieuProtocol(10.0, 2.0), 12 * PI),
    ("mathieu-8.5-1.0", MathieuProtocol(8.5, 1.0), 12 * PI),
    ("mathieu-4.4-1.0", MathieuProtocol(4.4, 1.0), 12 * PI),
    ("mathieu-4.0-1.0-unstable", MathieuProtocol(4.0, 1.0), 12 * PI),
    ("mathieu-4.0-1.5-unstable", MathieuProtocol(4.0, 1.5), 10 * PI),
    ("mathieu-1.0-0.45-unstable", MathieuProtocol(1.0, 0.45), 5 * PI),
]

SUITE_TOLERANCE = 1e-11
SUITE_SAMPLES = 2000


@pytest.fixture(scope="session")
def suite_trajectories():
    """Every suite protocol integrated at the reference tolerance."""
    out = []
    for label, protocol, tau_end in PROTOCOL_SUITE:
        grid = np.linspace(0.0, tau_end, SUITE_SAMPLES)
        traj = integrate(protocol, tau_end, output_grid=grid,
                         tolerance=SUITE_TOLERANCE)
        out.append((label, protocol, traj))
    return out
