class SYTError(Exception):
    """Base class for every error raised by the tableau services."""
    pass


class InvalidShapeError(SYTError):
    """Raised when a sequence of parts is not a partition (non-positive or increasing parts)."""
    pass


class CellOutsideShapeError(SYTError):
    """Raised when a cell does not lie inside the shape it is used with."""
    pass


class SameCellError(SYTError):
    """Raised when a sorting probability is requested for a cell against itself."""
    pass


class InnerNotContainedError(SYTError):
    """Raised when the inner shape of a skew shape is not contained in the outer shape."""
    pass


class ShapeTooLargeError(SYTError):
    """Raised when exhaustive enumeration is requested above the configured cell cap."""
    pass


class FitFailedError(SYTError):
    """Raised when no rational function of degree at most max_deg reproduces the evaluator."""
    pass


class DivergesAtInfinityError(SYTError):
    """Raised when an expansion at infinity is requested for a function that grows without bound."""
    pass


class DegenerateDistributionError(SYTError):
    """Raised when scaled moments are requested for a distribution with zero variance."""
    pass


class InvariantBreachError(SYTError):
    """Raised when two independent computations of the same quantity disagree."""
    pass
