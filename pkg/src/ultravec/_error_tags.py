"""Error tags for argument validators."""
from ._doc_utils import enum_docstrings
from ._exceptions import ErrorTag


@enum_docstrings
class ArgumentErrorTag(ErrorTag):
    """Error tags for the shared argument validators."""

    NOT_REAL = "NOT_REAL"
    """The argument must be a real number (int or float, not bool)."""

    NOT_FINITE = "NOT_FINITE"
    """The argument must be finite."""

    NOT_POSITIVE = "NOT_POSITIVE"
    """The argument must be strictly positive."""

    NOT_INTEGER = "NOT_INTEGER"
    """The argument must be an integer (not bool)."""

    INTEGER_TOO_SMALL = "INTEGER_TOO_SMALL"
    """The integer argument is below its allowed minimum."""

    INTEGER_TOO_LARGE = "INTEGER_TOO_LARGE"
    """The integer argument is above its allowed maximum."""

    NOT_IN_OPEN_UNIT_INTERVAL = "NOT_IN_OPEN_UNIT_INTERVAL"
    """The argument must lie strictly between 0 and 1."""

    NOT_A_VECTOR = "NOT_A_VECTOR"
    """The argument must be a one-dimensional sequence of finite reals."""

    WRONG_DIMENSION = "WRONG_DIMENSION"
    """The vector argument has the wrong number of components."""

    NOT_UNIT_VECTOR = "NOT_UNIT_VECTOR"
    """The vector argument must have Euclidean norm 1."""
