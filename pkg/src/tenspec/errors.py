"""Exception types raised across the package."""


class TenspecError(Exception):
    """Base class for all package errors."""


class DomainMismatchError(TenspecError, TypeError):
    """Exact and floating coefficients were mixed in one operation."""


class UnsupportedCaseError(TenspecError, ValueError):
    """The requested (n, d) or input shape is outside the implemented cases."""


class DegenerateInputError(TenspecError, ValueError):
    """A construction could not be completed for this input."""


class NotAnEigenvalueError(TenspecError, ValueError):
    """The supplied value is not an eigenvalue within tolerance."""


class ConvergenceError(TenspecError, RuntimeError):
    """An iterative method stopped before reaching its tolerance.

    The best iterate found is kept on ``best`` so callers can still inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
