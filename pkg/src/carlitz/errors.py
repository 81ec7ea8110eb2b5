"""Exception types shared across the package."""


class CarlitzError(Exception):
    """Base class for package errors."""


class DomainError(CarlitzError):
    """Input outside the convergence or definition domain of an operation."""


class PrecisionError(CarlitzError):
    """Requested precision cannot be certified with the configured limits."""


class ElementParseError(CarlitzError):
    """Malformed element or polynomial syntax."""
