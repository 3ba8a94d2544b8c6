"""Error tags for associated weights."""
from .._doc_utils import enum_docstrings
from .._exceptions import ErrorTag


@enum_docstrings
class AssocWeightErrorTag(ErrorTag):
    """Error tags for associated weights."""

    NOT_A_WEIGHT_SEQUENCE = "NOT_A_WEIGHT_SEQUENCE"
    """The evaluator needs a WeightSequence."""

    BEYOND_DOMAIN = "BEYOND_DOMAIN"
    """The argument exceeds log mu_K, where the truncated supremum stops being exact."""

    TAU_NOT_ABOVE_ONE = "TAU_NOT_ABOVE_ONE"
    """The exponent tau must exceed 1."""

    SHIFT_EXPONENT_TOO_SMALL = "SHIFT_EXPONENT_TOO_SMALL"
    """The shifted estimate needs sigma > tau."""

    TRUNCATION_MISMATCH = "TRUNCATION_MISMATCH"
    """Both sequences must have the same truncation order."""

    NOT_DOMINATED = "NOT_DOMINATED"
    """The comparison needs V_k <= M_k for every k."""

    AUX_PRECONDITION = "AUX_PRECONDITION"
    """The shifted estimate needs U <= A T^tau."""
