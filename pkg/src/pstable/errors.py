"""Exception hierarchy shared by all modules.

Each class maps onto one CLI exit code, so callers can translate failures
without string matching.
"""


class PStableError(Exception):
    """Base class for package errors."""

    exit_code = 5


class InvalidParameterError(PStableError, ValueError):
    """Parameters or inputs violate a documented precondition."""

    exit_code = 2


class DomainError(PStableError, ValueError):
    """Evaluation requested outside the domain where a quantity is defined."""

    exit_code = 2


class CapabilityError(PStableError, NotImplementedError):
    """The requested family, norm or regime is not covered."""

    exit_code = 3


class NotInLMDAError(CapabilityError):
    """Parent has no linear max-domain of attraction entry."""


class NonConvergenceError(PStableError):
    """Optimizer or validation run failed to converge.

    Parameters
    ----------
    message : str
        Human-readable reason.
    result : object, optional
        Best partial result found before giving up.
    """

    exit_code = 4

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NumericError(PStableError, ArithmeticError):
    """Numerical procedure failed (bracket, overflow, undefined statistic)."""

    exit_code = 5
