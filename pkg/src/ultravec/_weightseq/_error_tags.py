"""Error tags for weight sequences."""
from .._doc_utils import enum_docstrings
from .._exceptions import ErrorTag


@enum_docstrings
class WeightSeqErrorTag(ErrorTag):
    """Error tags for weight sequences."""

    TRUNCATION_TOO_SMALL = "TRUNCATION_TOO_SMALL"
    """The truncation order K is too small for the operation."""

    NOT_FINITE = "NOT_FINITE"
    """A log M_k value is not finite."""

    NOT_NORMALIZED = "NOT_NORMALIZED"
    """log M_0 must be 0."""

    M1_BELOW_ONE = "M1_BELOW_ONE"
    """M_1 must be at least 1."""

    NOT_LOG_CONVEX = "NOT_LOG_CONVEX"
    """The quotients mu_k = M_k / M_(k-1) must be non-decreasing."""

    ROOTS_NOT_INCREASING = "ROOTS_NOT_INCREASING"
    """The roots M_k^(1/k) must be non-decreasing."""

    MU_NOT_UNBOUNDED = "MU_NOT_UNBOUNDED"
    """The quotients mu_k must keep growing over the tail of the table."""

    GEVREY_ORDER_BELOW_ONE = "GEVREY_ORDER_BELOW_ONE"
    """A Gevrey sequence needs s >= 1."""

    BASE_NOT_ABOVE_ONE = "BASE_NOT_ABOVE_ONE"
    """A q-power sequence needs q > 1."""

    EXPONENT_NOT_ABOVE_ONE = "EXPONENT_NOT_ABOVE_ONE"
    """A q-power sequence needs r > 1."""

    TRUNCATION_MISMATCH = "TRUNCATION_MISMATCH"
    """Both sequences must have the same truncation order."""

    INDEX_OUT_OF_RANGE = "INDEX_OUT_OF_RANGE"
    """A summation bound lies outside the table."""

    TOLERANCE_TOO_FINE = "TOLERANCE_TOO_FINE"
    """The gamma tolerance is finer than the truncation can resolve."""

    INVALID_DESCRIPTOR = "INVALID_DESCRIPTOR"
    """A sequence description record is malformed."""

    UNKNOWN_FAMILY = "UNKNOWN_FAMILY"
    """A sequence description names an unknown family."""

    SCALE_BELOW_ONE = "SCALE_BELOW_ONE"
    """The scales rho and R of the splitting inequality must be at least 1."""
