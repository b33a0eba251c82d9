"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed its configured budget."""
