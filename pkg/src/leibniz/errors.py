"""Exception hierarchy.  The CLI maps these onto exit codes."""


class LeibnizError(Exception):
    """Base class for library errors."""


class UsageError(LeibnizError, ValueError):
    """Bad arguments: dimension mismatch, out-of-range sizes, malformed input."""


class InvalidTransformError(LeibnizError):
    """A basis change (or transform step) is singular or malformed."""


class PreconditionError(LeibnizError):
    """An operation was called on an input violating its precondition."""


class DescriptorError(LeibnizError, ValueError):
    """An algebra descriptor violates its family's parameter constraints."""
