"""Exception types shared across the package."""


class DepthError(ValueError):
    """A computation needs a larger truncation depth than was supplied."""


class ResourceError(RuntimeError):
    """A weight space would exceed the configured dimension ceiling."""


class PreconditionError(ValueError):
    """Inputs violate a documented precondition (dominance, level, ...)."""
