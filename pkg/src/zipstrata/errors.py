"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a stated condition (bad type vector, wrong form, ...)."""


class ResourceError(RuntimeError):
    """An enumeration would exceed a configured guard."""


class ConsistencyError(AssertionError):
    """Two independent computations disagree; indicates a bug."""
