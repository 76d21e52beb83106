class ObstructorError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ObstructorError, ValueError):
    """An input lies outside the domain of the operation (zero rational, p | u, ...)."""


class UsageError(ObstructorError):
    """An operation was called outside its precondition."""


class ResourceError(ObstructorError):
    """A size cap or time budget was exceeded."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class EvaluationError(ObstructorError):
    """A Brauer class could not be evaluated at the given point."""


class InconsistencyError(ObstructorError, AssertionError):
    """An internal cross-check failed; indicates a bug, never bad input."""
