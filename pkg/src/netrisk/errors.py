"""Exception hierarchy.

Data errors (bad rows, missing inputs, unknown periods) derive from
``DataError``; the CLI maps those to exit status 1.
"""

from __future__ import annotations


class NetriskError(Exception):
    """Base class for every error raised by the package."""


class DataError(NetriskError):
    """Invalid input data. ``line`` is 1-based and counts the header."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.source = source
        self.period: str | None = None
        super().__init__(message)

    def __str__(self) -> str:
        where = ""
        if self.source is not None:
            where = self.source + (f":{self.line}" if self.line is not None else "") + ": "
        elif self.line is not None:
            where = f"line {self.line}: "
        tag = f"[{self.period}] " if self.period else ""
        return f"{where}{tag}{self.message}"


class MalformedRow(DataError):
    pass


class BadPeriod(DataError):
    pass


class BadCountryCode(DataError):
    pass


class NegativeClaim(DataError):
    pass


class SelfClaim(DataError):
    pass


class DuplicateRow(DataError):
    pass


class ProbOutOfRange(DataError):
    pass


class NegativeValue(DataError):
    pass


class MissingRiskInput(DataError):
    pass


class UnknownPeriod(DataError):
    pass


class MissingCountry(DataError):
    pass


class TooFewNodes(NetriskError):
    pass


class GraphTooLarge(NetriskError):
    pass


class DimensionMismatch(NetriskError):
    pass


class EmptySeries(NetriskError):
    pass


class InconsistentCountrySet(UserWarning):
    """Risk inputs mention a country that never appears in the exposures."""
