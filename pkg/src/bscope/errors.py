"""Exception hierarchy shared by all bscope modules.

The CLI maps these onto exit codes: usage and domain problems exit 2,
resource caps exit 3, and inconclusive finite-horizon outcomes exit 4.
"""


class BscopeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(BscopeError):
    """Malformed grammar input. Carries the offending position when known."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DomainError(BscopeError):
    """A value outside an operation's domain: unknown point, spec mismatch,
    or a violated precondition."""


class ConstructionError(BscopeError):
    """Invalid construction of a window, ray, sample, or measure."""


class OutOfWindowError(BscopeError):
    """A required norm or distance exceeds the declared window radius.
    The caller must widen the window."""


class ResourceCapError(BscopeError):
    """An enumeration would exceed its configured element cap."""


class InconclusiveError(BscopeError):
    """The truncation horizon is too short to decide the question."""


class UnsupportedRayError(BscopeError):
    """The ray has no canonical geodesic normal form under the requested
    operation."""
