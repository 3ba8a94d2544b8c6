"""Error tags for the command-line front-end."""
from .._doc_utils import enum_docstrings
from .._exceptions import ErrorTag


@enum_docstrings
class CliErrorTag(ErrorTag):
    """Error tags for run configurations and command-line arguments."""

    INVALID_JSON = "INVALID_JSON"
    """The configuration is not valid JSON."""

    UNREADABLE_CONFIG = "UNREADABLE_CONFIG"
    """The configuration file cannot be read."""

    NOT_AN_OBJECT = "NOT_AN_OBJECT"
    """A configuration section must be a JSON object."""

    UNKNOWN_KEY = "UNKNOWN_KEY"
    """The configuration has a key no part of the run reads."""

    INVALID_FIELD = "INVALID_FIELD"
    """A configuration field has the wrong type or an invalid value."""

    UNKNOWN_SEQUENCE = "UNKNOWN_SEQUENCE"
    """A sequence reference is neither a configured name nor a shorthand such as gevrey:2."""

    INVALID_SEQUENCE = "INVALID_SEQUENCE"
    """A sequence descriptor cannot be built."""

    INVALID_OPERATOR = "INVALID_OPERATOR"
    """The operator descriptor cannot be built."""

    INVALID_REGIME = "INVALID_REGIME"
    """The regime record names an unknown kind or malformed parameters."""

    UNKNOWN_SUITE = "UNKNOWN_SUITE"
    """A suite name is not one of the known suites."""
