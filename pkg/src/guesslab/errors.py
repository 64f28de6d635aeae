"""Exception types shared across the library."""


class GuesslabError(Exception):
    """Base class for every error raised by guesslab."""


class VertexRangeError(GuesslabError, IndexError):
    """A vertex label falls outside 0..n-1."""


class NotAcyclicError(GuesslabError, ValueError):
    """An operation required an acyclic vertex set and got a cyclic one."""


class PreconditionError(GuesslabError, ValueError):
    """An operation's documented precondition does not hold."""


class ResourceBoundError(GuesslabError):
    """Exact search would exceed the configured size bound."""


class SearchFailedError(GuesslabError):
    """An exhaustive or randomized search ended without a witness."""


class ParseError(GuesslabError, ValueError):
    """Malformed serialized input, with best-effort position info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)
