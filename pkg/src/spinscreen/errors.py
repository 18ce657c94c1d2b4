"""Exception types raised across the package."""


class EmptyDomain(ValueError):
    """The four outer spins admit no (j12, j23) pair."""


class OracleRangeExceeded(ValueError):
    """Brute-force oracle called with spins above its guard."""


class InvalidSchedule(ValueError):
    """R schedule for the 3j limit is not strictly increasing or breaks a triangle."""


class RecurrenceBreakdown(ArithmeticError):
    """Three-term recurrence lost all significance in a column."""

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class NotATriangle(ValueError):
    """Side lengths violate the triangle inequality beyond tolerance."""


class OutOfScreen(ValueError):
    """Ridge radicand is negative; the curve has left the physical strip."""


class NoRoot(ValueError):
    """No real caustic root on the requested line."""
