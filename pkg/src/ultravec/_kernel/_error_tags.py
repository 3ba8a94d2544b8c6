"""Error tags for the flat kernel."""
from .._doc_utils import enum_docstrings
from .._exceptions import ErrorTag


@enum_docstrings
class KernelErrorTag(ErrorTag):
    """Error tags for the flat kernel."""

    NOT_A_WEIGHT_SEQUENCE = "NOT_A_WEIGHT_SEQUENCE"
    """The kernel needs a WeightSequence."""

    TAIL_MARGIN_TOO_SHORT = "TAIL_MARGIN_TOO_SHORT"
    """The table needs at least 16 cells beyond the moment order."""

    TAIL_NOT_CERTIFIED = "TAIL_NOT_CERTIFIED"
    """The remainder beyond mu_K is too large a share of the moment."""
