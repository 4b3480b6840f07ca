"""Exception hierarchy shared by the library, the service and the CLI."""


class GelfondError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GelfondError):
    """Invalid argument: bad base, unsatisfied precondition, malformed input.

    Mapped to exit code 2 by the CLI and HTTP 422 by the service.
    """


class InvalidBaseError(ValidationError):
    """Base q < 2."""


class UndefinedIndexError(ValidationError):
    """Most-significant-digit index requested for 0."""


class DomainError(ValidationError):
    """A formula was evaluated outside its mathematical domain."""


class ModeError(ValidationError):
    """Incompatible accumulation / evaluation mode for the given query."""


class CapacityError(GelfondError):
    """Requested computation exceeds the configured memory or size budget.

    Mapped to exit code 3 by the CLI and HTTP 413 by the service.
    """


class SearchExhaustedError(GelfondError):
    """A bounded search finished without finding an admissible witness."""
