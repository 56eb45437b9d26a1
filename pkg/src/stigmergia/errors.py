"""Exception types shared across the package."""


class StigmergiaError(Exception):
    """Base class for all package-specific errors."""


class EmptyObjectError(StigmergiaError):
    """An operation needing object pixels was given an all-background mask."""


class InsufficientDataError(StigmergiaError):
    """Too few samples for the requested normalization or statistic."""


class DimensionMismatchError(StigmergiaError):
    """Feature vectors of different lengths were combined."""


class DegenerateHistogramError(StigmergiaError):
    """A constant-valued image admits no separating threshold."""


class CapacityExceededError(StigmergiaError):
    """More items or agents than the grid can hold."""


class EvenKError(StigmergiaError):
    """k-NN vote counts require an odd k."""


class NotEnoughMarkersError(StigmergiaError):
    """Fewer labeled markers than the requested k."""


class IdMismatchError(StigmergiaError):
    """Prediction and truth cover different item id sets."""


class NoItemsError(StigmergiaError):
    """Entropy of an empty placement is undefined."""


class UnknownColumnError(StigmergiaError):
    """A requested CSV column does not exist."""
