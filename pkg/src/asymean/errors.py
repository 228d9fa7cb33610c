"""Exception hierarchy shared by every asymean module."""

from __future__ import annotations


class AsymeanError(Exception):
    """Base class for all library errors."""


class ParseError(AsymeanError, ValueError):
    """Malformed coefficient literal, entry spec or series document."""


class SymbolTableError(AsymeanError):
    """Unknown symbol, or operands living in different symbol tables."""


class CoefficientDivisionError(AsymeanError, ZeroDivisionError):
    """Division by a zero Coefficient (or a denominator vanishing at a binding)."""


class UnboundSymbolError(AsymeanError, KeyError):
    """Substitution left a symbol without a value."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class TruncationError(AsymeanError):
    """An operation needs more known coefficients than its input carries."""


class ExponentError(AsymeanError):
    """Exponents that cannot be aligned or represented."""


class ConditionError(AsymeanError):
    """A solvability condition of the equation B(A(x)) = C(x) is violated.

    ``condition`` is a short machine-readable name, ``n`` the offending
    index when there is one.
    """

    def __init__(self, condition: str, message: str, n: int | None = None):
        self.condition = condition
        self.n = n
        super().__init__(message)


class TableBoundError(AsymeanError):
    """A catalog entry was asked for more terms than its hardcoded table holds."""


class PrecisionError(AsymeanError):
    """A numeric oracle could not reach its target precision."""


class MonotonicityError(AsymeanError):
    """The function is not certified strictly monotone on the interval."""
