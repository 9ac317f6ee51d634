"""
Exception hierarchy shared by the q-series engine, the identity registry and the CLI.
"""
from typing import Iterable, Tuple


class QSeriesError(Exception):
    """Root of every error raised by the engine."""


class ConfigurationError(QSeriesError, ValueError):
    """Invalid settings, environments, denominators or knob values."""


class ExactnessError(QSeriesError, ArithmeticError):
    """An exact division left a remainder."""


class ParityError(ExactnessError):
    """Division of a coefficient by an integer was inexact (e.g. a 1/2 prefactor)."""


class InversionError(QSeriesError, ArithmeticError):
    """The lowest term of a series is not a unit monomial."""


class GradingError(QSeriesError, ValueError):
    """A requested sum is not q-graded: some coefficient would be an infinite sum."""


class NonTerminationError(QSeriesError, RuntimeError):
    """Shell enumeration did not reach its stopping condition within the guard."""


class UnsupportedError(QSeriesError, ValueError):
    """A knob value outside the range the engine supports."""


class UnknownIdentityError(QSeriesError, LookupError):
    """No catalog entry with the requested id."""


class ExpressionSyntaxError(QSeriesError, ValueError):
    """
    Parse failure of a product expression.

    Attributes:
        offset: Byte offset of the offending character
        expected: Sorted names of the tokens that would have been accepted
    """

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected: Tuple[str, ...] = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")
