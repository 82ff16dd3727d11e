"""Exception hierarchy shared by all modules."""


class FracFilterError(Exception):
    """Base class for every error raised by the package."""


class DomainError(FracFilterError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class RegimeError(FracFilterError):
    """No closed form is implemented for the requested parameter regime."""


class QuadratureError(FracFilterError):
    """An integration routine failed to reach its tolerance.

    Attributes:
        estimate: The error estimate at the point of failure, if known.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class ConvergenceError(FracFilterError):
    """An iterative solver (root finder, branch tracker) did not converge."""


class FactorizationError(FracFilterError):
    """A covariance matrix could not be factorized even with jitter."""
