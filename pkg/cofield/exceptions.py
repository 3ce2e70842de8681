"""Exceptions raised by cofield.

Each exception also derives from the built-in exception that best describes
it, so callers that only care about e.g. :class:`ValueError` keep working.
"""


class CofieldError(Exception):
    """Base class for all cofield-specific errors."""


class SchemeError(CofieldError, ValueError):
    """A field classification registry violates a fatal invariant."""


class DataError(CofieldError, ValueError):
    """An input file or record is malformed or inconsistent."""


class UnknownCodeError(CofieldError, LookupError):
    """A field, discipline, or publication identifier is not registered."""

    def __str__(self):
        # LookupError would otherwise show the repr of the message
        return str(self.args[0]) if self.args else ""


class DomainError(CofieldError, ValueError):
    """A statistic is undefined for the given input."""


class ConsistencyError(CofieldError, ValueError):
    """Counts that cannot come from a real corpus (e.g. c > min(a, b))."""


class ParameterError(CofieldError, ValueError):
    """Infeasible parameters for a generator or a guarded computation."""
