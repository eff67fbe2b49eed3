"""Exception types shared across the package."""


class TnLabError(Exception):
    """Base class for all package-specific errors."""


class RangeError(TnLabError, ValueError):
    """A numeric argument is outside its documented range."""


class DomainError(TnLabError, ValueError):
    """An argument violates a mathematical precondition."""


class UsageError(TnLabError, ValueError):
    """An API was called incorrectly (duplicate tag, too few inputs, ...)."""


class PreconditionError(TnLabError, ValueError):
    """A stated hypothesis fails; carries the offending data."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class ResourceError(TnLabError, RuntimeError):
    """A computation would exceed its configured resource budget."""


class CapExceeded(TnLabError, RuntimeError):
    """The search cap was exhausted before the target was found.

    Carries partial state so callers can report or resume.
    """

    def __init__(self, n, cap, inserted, rank):
        super().__init__(f"no witness for n={n} within cap={cap} "
                         f"({inserted} offsets inserted, basis rank {rank})")
        self.n = n
        self.cap = cap
        self.inserted = inserted
        self.rank = rank


class PipelineFailed(TnLabError, RuntimeError):
    """A constructive pipeline could not complete; carries the failing stage."""

    def __init__(self, stage, message):
        super().__init__(f"pipeline failed at stage '{stage}': {message}")
        self.stage = stage
