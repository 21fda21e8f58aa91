"""Exception types raised across the package."""


class GlorqError(Exception):
    """Base class for all package errors."""


class DomainError(GlorqError, ValueError):
    """An argument lies outside the domain of the operation."""


class IngestError(GlorqError):
    """Input data could not be read or parsed into a usable series."""


class EmitError(GlorqError):
    """Rendered output could not be written."""
