"""Base class for error tag enums."""
from enum import Enum


class ErrorTag(str, Enum):
    """Base class for error tag enums.

    Every raise site in ultravec carries a member of an ErrorTag subclass. The member's
    docstring becomes the explanatory tail of the exception message, and tests assert on the
    tag rather than on message text.
    """
