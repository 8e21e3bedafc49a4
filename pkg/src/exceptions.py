"""
Exception hierarchy for the approximation toolkit.

Every error raised deliberately by the library derives from
ApproximationError so that the CLI can map them to exit codes in one place.
"""

from typing import Any


class ApproximationError(Exception):
    """
    Base class for all library errors.

    Attributes:
        message: Human-readable description.
        details: Structured context, suitable for logging as key/value pairs.
    """

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self) -> str:
        if not self.details:
            return self.message
        extra = ", ".join(f"{key}={value!r}" for key, value in sorted(self.details.items()))
        return f"{self.message} ({extra})"


class DegenerateRecurrence(ApproximationError):
    """A three-term recurrence denominator vanished."""


class DegenerateDenominator(ApproximationError):
    """A closed-form coefficient has a zero denominator."""


class CapExceeded(ApproximationError):
    """A requested degree or order exceeds the configured cap."""


class EigenFailure(ApproximationError):
    """The tridiagonal eigen-solve behind a Gauss rule did not converge."""


class MissingDerivative(ApproximationError):
    """A function was asked for a derivative it does not declare."""


class IndexRange(ApproximationError):
    """A truncation index lies outside the available coefficients."""


class TailNotResolved(ApproximationError):
    """Coefficient decay is too slow for the requested tail quantity."""


class IntegralNotConverged(ApproximationError):
    """An adaptive integral reached its order cap without converging."""


class PreconditionViolated(ApproximationError):
    """Input data does not satisfy an identity's hypothesis."""


class UnknownId(ApproximationError):
    """A test-function id could not be resolved."""


class TooFewPoints(ApproximationError):
    """Not enough usable points for a least-squares fit."""


class UsageError(ApproximationError):
    """Invalid command-line or configuration input."""


class ReportIOError(ApproximationError):
    """A report could not be written."""


__all__ = [
    "ApproximationError",
    "CapExceeded",
    "DegenerateDenominator",
    "DegenerateRecurrence",
    "EigenFailure",
    "IndexRange",
    "IntegralNotConverged",
    "MissingDerivative",
    "PreconditionViolated",
    "ReportIOError",
    "TailNotResolved",
    "TooFewPoints",
    "UnknownId",
    "UsageError",
]
