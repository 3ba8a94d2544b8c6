"""The tagged exception base class and message helper."""
import re
from enum import Enum
from textwrap import dedent
from typing import Any, Generic, TypeVar

from ._error_tag import ErrorTag

E = TypeVar('E', bound=Exception)

_WHITESPACE = re.compile(r'\s+')


class TaggedException(Exception, Generic[E]):
    """An exception that must be raised with an Enum tag.

    Specialize it together with the builtin it stands for so that callers can keep catching
    the builtin:

    .. code-block:: python

        class ValidationError(TaggedException[ValueError], ValueError):
            '''Invalid argument value.'''

        raise ValidationError("K must be at least 2", tag=WeightSequenceErrorTag.TRUNCATION_TOO_SMALL)

    :param tag: Enum member identifying the raise site (keyword only).
    :param args: Passed to the builtin exception.
    :param kwargs: Passed to the builtin exception.
    """
    def __init__(self, *args: Any, tag: Enum, **kwargs: Any) -> None:
        if not isinstance(tag, Enum):
            raise TypeError("Missing or wrong type 'tag' argument (must be Enum)")
        self.tag_code = tag
        """The tag identifying where the exception was raised."""
        super().__init__(*args, **kwargs)


def normalize_whitespace(text: str) -> str:
    """Dedent text and collapse every whitespace run to a single space.

    :param str text: The text to normalize.
    :return str: The normalized single-line text.
    """
    return _WHITESPACE.sub(' ', dedent(text)).strip()


def generate_message(msg: str, tag: ErrorTag) -> str:
    """Append the tag description to an error message.

    :param str msg: The base error message.
    :param ErrorTag tag: The error tag; its docstring (or value) is appended after ': '.
    :return str: The single-line message.
    """
    detail = tag.value if tag.__doc__ is None else normalize_whitespace(tag.__doc__)
    return f"{msg}: {detail}".replace('\n', ' ')
