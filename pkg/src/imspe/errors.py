"""Exception types raised across the package."""


class ImspeError(Exception):
    """Base class for all package-specific errors."""


class InvalidHyperparameterError(ImspeError, ValueError):
    """Raised when a covariance kind or length-scale parameter is unusable."""


class InvalidDesignError(ImspeError, ValueError):
    """Raised when design points are malformed or leave the unit box."""


class SingularDesignError(ImspeError):
    """Raised when the design correlation matrix is not numerically positive definite.

    Carries ``condition_estimate`` (may be ``inf``) so callers can report how
    degenerate the design was.
    """

    def __init__(self, message, condition_estimate=float("inf")):
        super().__init__(message)
        self.condition_estimate = float(condition_estimate)


class OracleDivergenceError(ImspeError):
    """Raised when the quadrature oracle fails to reach its tolerance within its refinement budget."""
