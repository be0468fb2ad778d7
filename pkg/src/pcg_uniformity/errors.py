"""
Exception hierarchy.

Each class maps to one CLI exit code (``EXIT_PARSE``, ``EXIT_CAPACITY``
and ``EXIT_USAGE`` in ``__main__``):
parse errors exit 2, capacity refusals exit 3, everything else that
violates a precondition exits 4.
"""


class PCGUniformityError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(PCGUniformityError, ValueError):
    """Invalid ring spec (m < 2, n < 1) or invalid capacity limits."""


class UsageError(PCGUniformityError, ValueError):
    """An operation was called outside its precondition."""


class DimensionError(UsageError):
    """Collection, vector or matrix dimensions do not agree."""


class CapacityError(PCGUniformityError):
    """The requested enumeration or table is larger than the configured limit."""


class ParseError(PCGUniformityError, ValueError):
    """Malformed polynomial, collection, range, vector or mode text."""
