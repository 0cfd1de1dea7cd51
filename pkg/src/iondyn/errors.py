"""Exception hierarchy for iondyn."""


class IonDynError(Exception):
    """Base class for all iondyn errors."""


class ProtocolError(IonDynError):
    """A frequency protocol is invalid or was evaluated outside its domain."""


class NonPositiveFrequency(ProtocolError):
    """The squared trap frequency is not strictly positive."""


class OutOfDomain(ProtocolError):
    """A tabulated protocol was evaluated outside its sample range."""


class DegenerateProtocol(ProtocolError):
    """Protocol parameters leave the initial frequency undefined (a - 2q <= 0)."""


class InvalidTemperature(IonDynError):
    """Negative bath temperature."""


class IntegrationError(IonDynError):
    """Base class for integrator failures."""


class StepFailure(IntegrationError):
    """The adaptive step controller could not meet the requested tolerance."""


class GrowthOverflow(IntegrationError):
    """A fundamental solution exceeded the overflow guard while growing.

    Carries ``tau_reached``, the dimensionless time at which the guard fired.
    """

    def __init__(self, tau_reached: float, limit: float):
        self.tau_reached = tau_reached
        self.limit = limit
        super().__init__(
            f"fundamental solution exceeded {limit:g} at tau = {tau_reached:.6g}"
        )


class IdentityViolation(IonDynError):
    """A conserved bilinear identity drifted beyond its hard bound."""


class DomainError(IonDynError):
    """A derived quantity left its mathematical domain beyond roundoff tolerance."""


class InvalidInput(IonDynError):
    """Bad user-supplied value (CLI or config)."""


class ConfigError(InvalidInput):
    """Malformed or inconsistent configuration file."""
