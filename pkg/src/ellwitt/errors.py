"""Exception types shared across the package."""


class ValidationError(Exception):
    """Two independent computations of the same quantity disagree, or a
    mathematically guaranteed assertion failed.  Always names the check."""


class PrecisionError(Exception):
    """A series coefficient beyond the known absolute precision was read."""
