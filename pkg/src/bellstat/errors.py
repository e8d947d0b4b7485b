"""Exception types shared across the package."""


class BellstatError(Exception):
    """Base class for all bellstat errors."""


class ValidationError(BellstatError, ValueError):
    """An input violates a documented contract (domain, shape, or state)."""
