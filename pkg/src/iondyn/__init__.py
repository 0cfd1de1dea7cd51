"""Dynamics of a single trapped ion in a time-dependent harmonic potential.

Simulates the motional state under configurable frequency protocols and
derives the non-adiabaticity triple, the classicality witness of the evolved
Gaussian state, the squeeze/rotation factorization of the evolution
operator, and Floquet stability maps of the periodic drive.
"""

from .errors import (
    ConfigError,
    DegenerateProtocol,
    DomainError,
    GrowthOverflow,
    IdentityViolation,
    IntegrationError,
    InvalidInput,
    InvalidTemperature,
    IonDynError,
    NonPositiveFrequency,
    OutOfDomain,
    ProtocolError,
    StepFailure,
)
from .evolution_op import (
    EvolutionParams,
    SqueezedThermalParams,
    bar_q_triple,
    evolution_params,
    fg_from_state,
    squeeze_params,
    squeezed_thermal,
)
from .heisenberg import (
    CovarianceState,
    QTriple,
    bogoliubov_r,
    classicality,
    covariance,
    critical_q,
    mean_values,
    q_triple,
    variances,
)
from .integrator import (
    FundamentalState,
    Trajectory,
    integrate,
    integrate_fixed,
    sudden_jump_state,
    wronskian,
)
from .model import (
    DIMENSIONLESS,
    SI,
    ConstantProtocol,
    FrequencyProtocol,
    LinearRampProtocol,
    MathieuProtocol,
    SuddenJumpProtocol,
    TabulatedProtocol,
    ThermalConfig,
    UnitSystem,
    mathieu_scale,
    omega_squared,
    thermal_config,
    thermal_config_from_nbar,
)
from .report import RunReport, run_simulation
from .stability import MonodromyResult, monodromy, scan

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DegenerateProtocol", "DomainError", "GrowthOverflow",
    "IdentityViolation", "IntegrationError", "InvalidInput",
    "InvalidTemperature", "IonDynError", "NonPositiveFrequency",
    "OutOfDomain", "ProtocolError", "StepFailure",
    "EvolutionParams", "SqueezedThermalParams", "bar_q_triple",
    "evolution_params", "fg_from_state", "squeeze_params", "squeezed_thermal",
    "CovarianceState", "QTriple", "bogoliubov_r", "classicality",
    "covariance", "critical_q", "mean_values", "q_triple", "variances",
    "FundamentalState", "Trajectory", "integrate", "integrate_fixed",
    "sudden_jump_state", "wronskian",
    "DIMENSIONLESS", "SI", "ConstantProtocol", "FrequencyProtocol",
    "LinearRampProtocol", "MathieuProtocol", "SuddenJumpProtocol",
    "TabulatedProtocol", "ThermalConfig", "UnitSystem", "mathieu_scale",
    "omega_squared", "thermal_config", "thermal_config_from_nbar",
    "RunReport", "run_simulation",
    "MonodromyResult", "monodromy", "scan",
]
