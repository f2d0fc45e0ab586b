"""Exception hierarchy shared by every module."""


class KPrimitiveError(Exception):
    """Base class for all library errors."""


class DomainError(KPrimitiveError, ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(KPrimitiveError, ValueError):
    """Input violates a stated precondition (e.g. a set that is not 2-primitive)."""


class InvariantError(KPrimitiveError, RuntimeError):
    """A postcondition that should hold by construction was found violated."""


class SetFileError(KPrimitiveError, ValueError):
    """Malformed set file; carries the offending 1-based line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
