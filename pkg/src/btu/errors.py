"""Exception types shared by every module."""


class BtuError(Exception):
    """Base class for library errors."""


class DomainError(BtuError, ValueError):
    """An argument lies outside the operation's mathematical domain."""


class ResourceError(BtuError, RuntimeError):
    """A brute-force search was asked for a size beyond its configured limit."""


class NotFoundError(BtuError, LookupError):
    """A well-formed query has no solution (e.g. an empty Phi family)."""
