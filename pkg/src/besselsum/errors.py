"""Exception types shared across the package."""


class BesselSumError(Exception):
    """Base class for all errors raised by besselsum."""


class DomainError(BesselSumError, ValueError):
    """An argument lies outside the sector or range an operation supports."""


class PoleError(DomainError):
    """A function was evaluated at one of its poles."""


class PrecisionError(BesselSumError, ArithmeticError):
    """The working precision cannot deliver the requested accuracy."""


class CoefficientUnavailableError(BesselSumError, LookupError):
    """A hardcoded coefficient family was asked for more terms than it stores."""


class PlanExhaustedError(BesselSumError, LookupError):
    """A summation needed more truncation plans than were supplied."""


class CancellationWarning(UserWarning):
    """A formula is being evaluated close to a removable singularity."""
