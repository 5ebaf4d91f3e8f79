"""Exception types shared across the package."""


class InvalidCoweight(ValueError):
    """A coweight does not belong to the root datum (wrong length, broken similitude)."""


class NotDominant(ValueError):
    pass


class ResourceCapExceeded(RuntimeError):
    """An enumeration would exceed its configured element cap."""


class PrecisionError(ArithmeticError):
    """A Laurent valuation left the hard window."""
