"""Error tags for the numerics substrate."""
from .._doc_utils import enum_docstrings
from .._exceptions import ErrorTag


@enum_docstrings
class NumericsErrorTag(ErrorTag):
    """Error tags for the numerics substrate."""

    INVALID_SIGN = "INVALID_SIGN"
    """A LogValue sign must be -1, 0 or +1."""

    INVALID_LOG_MAGNITUDE = "INVALID_LOG_MAGNITUDE"
    """A LogValue log-magnitude must be finite or -inf."""

    ZERO_MISMATCH = "ZERO_MISMATCH"
    """A LogValue has sign 0 exactly when its log-magnitude is -inf."""

    DIVISION_BY_ZERO = "DIVISION_BY_ZERO"
    """Division of a LogValue by zero."""

    INSUFFICIENT_POINTS = "INSUFFICIENT_POINTS"
    """Growth fits and trend statistics need more data points."""

    LENGTH_MISMATCH = "LENGTH_MISMATCH"
    """Data and reference sequences must have equal lengths."""

    NAN_IN_DATA = "NAN_IN_DATA"
    """Input data contains NaN."""

    TAIL_DIVERGENT = "TAIL_DIVERGENT"
    """The truncation is too short for the power: the integral over the last cell diverges."""

    POWER_TOO_SMALL = "POWER_TOO_SMALL"
    """The power must exceed -1 when integrating from 0."""

    NEGATIVE_LOWER_LIMIT = "NEGATIVE_LOWER_LIMIT"
    """The lower integration limit must be non-negative."""

    INVALID_BREAKPOINTS = "INVALID_BREAKPOINTS"
    """Breakpoints must be finite, non-negative and contain at least two distinct values."""

    NON_DECAYING_PROFILE = "NON_DECAYING_PROFILE"
    """The profile has not decayed at the end of the integration range."""

    QUADRATURE_BUDGET = "QUADRATURE_BUDGET"
    """The oscillatory rule would need more nodes than allowed."""

    ORDER_OUT_OF_RANGE = "ORDER_OUT_OF_RANGE"
    """Jet orders must lie between 0 and the maximum jet order."""

    INVALID_PROFILE = "INVALID_PROFILE"
    """The profile description is malformed."""

    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    """Center and direction must have the profile's dimension."""
