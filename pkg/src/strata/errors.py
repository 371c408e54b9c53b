"""Exception types shared across the package."""


class StrataError(Exception):
    """Base class for every error raised by this package."""


class MalformedInputError(StrataError, ValueError):
    """A simplex or complex description is structurally invalid."""


class NotFoundError(StrataError, LookupError):
    """A simplex was expected to belong to a complex but does not."""


class DomainError(StrataError, ValueError):
    """An argument is outside the domain of the operation."""


class InvariantViolationError(StrataError):
    """A structural invariant (e.g. boundary-of-boundary = 0) failed."""


class HypothesesUnmetError(StrataError):
    """The input does not satisfy the hypotheses of the requested check."""


class InputFormatError(StrataError, ValueError):
    """A JSON document or matrix dump does not follow the fixed schema."""


class ResourceCapError(StrataError):
    """The complex exceeds the configured size cap."""
