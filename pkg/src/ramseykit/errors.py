"""Shared exception types."""


class InputError(ValueError):
    """An operation's input violates its documented preconditions."""


class FormatError(InputError):
    """Malformed text input; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte {offset})"
        super().__init__(message)
        self.offset = offset


class Graph6Error(FormatError):
    """Malformed graph6 input."""


class InfeasibleError(RuntimeError):
    """Randomized generation exhausted its retry budget without a valid output."""

    def __init__(self, message: str, attempts: int = 0):
        super().__init__(message)
        self.attempts = attempts


class Undecided(RuntimeError):
    """A value-returning operation could not decide within its resource budget.

    Search operations that return verdict objects report budget exhaustion as
    an explicit UNDECIDED outcome instead; this exception is for operations
    whose return type is a plain value (for example ``minimalize``).
    """
