"""Exception hierarchy shared across the package."""


class LobwaveError(Exception):
    """Base class for all package-specific errors."""


class DomainError(LobwaveError, ValueError):
    """Input outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """Input admissible in principle but outside representable range."""


class DegenerateModeError(DomainError):
    """kappa = 0 mode requested from machinery that divides by kappa."""


class AccuracyError(LobwaveError):
    """A numerical routine could not reach its accuracy target."""


class ConditioningError(LobwaveError):
    """A fit or solve is too ill-conditioned to be meaningful."""
