"""Error tags for the Metivier-type construction."""
from .._doc_utils import enum_docstrings
from .._exceptions import ErrorTag


@enum_docstrings
class MetivierErrorTag(ErrorTag):
    """Error tags for operators, parameter selection and the construction of u."""

    INVALID_POLYNOMIAL = "INVALID_POLYNOMIAL"
    """A polynomial needs integer exponent tuples of its dimension and finite coefficients."""

    INVALID_OPERATOR = "INVALID_OPERATOR"
    """An operator needs multi-indices of its dimension and polynomial coefficients."""

    ZERO_PRINCIPAL_PART = "ZERO_PRINCIPAL_PART"
    """The operator has no term with a non-zero coefficient."""

    INVALID_DESCRIPTOR = "INVALID_DESCRIPTOR"
    """An operator descriptor is malformed."""

    INDEX_OUT_OF_RANGE = "INDEX_OUT_OF_RANGE"
    """A coordinate index must lie between 0 and the dimension minus one."""

    INVALID_SEARCH_BOX = "INVALID_SEARCH_BOX"
    """The search box needs finite lower and upper corners with lower <= upper."""

    NOT_NONELLIPTIC = "NOT_NONELLIPTIC"
    """The principal symbol does not vanish at (x0, xi0)."""

    NO_NONELLIPTIC_POINT = "NO_NONELLIPTIC_POINT"
    """No zero of the principal symbol was found on the search box."""

    BUMP_NOT_OF_CLASS = "BUMP_NOT_OF_CLASS"
    """The cut-off derivatives outgrow the target sequence; try a larger flatness or a larger L."""

    REGIME_CONSTRAINT = "REGIME_CONSTRAINT"
    """A parameter constraint of the selected regime fails."""

    EPS_OUT_OF_RANGE = "EPS_OUT_OF_RANGE"
    """The exponent epsilon must lie in (0, 1/2]."""

    TRUNCATION_MISMATCH = "TRUNCATION_MISMATCH"
    """The sequences of an instance must share one truncation order."""

    TERM_BUDGET = "TERM_BUDGET"
    """The iterate expansion grew beyond the term budget."""

    GRID_DIMENSION = "GRID_DIMENSION"
    """A planar patch needs dimension at least 2."""

    INVALID_T_GRID = "INVALID_T_GRID"
    """A t-grid must hold finite values t >= 1."""
