"""Substitute named values into docstrings."""
import re
from typing import Any, Callable, TypeVar

T = TypeVar('T', bound=Callable[..., Any])

_PLACEHOLDER_PATTERN = re.compile(r'\{([A-Za-z_][A-Za-z0-9_]*)\}')
"""Matches ``{name}`` placeholders. Braces around anything else (set literals in examples,
reST roles) are left alone."""


def format_docstring(**values: Any) -> Callable[[T], T]:
    """Return a decorator that replaces ``{name}`` placeholders in a docstring.

    Used to keep documented defaults in step with :mod:`ultravec._constants`:

    .. code-block:: python

        @format_docstring(default_k=DEFAULT_TRUNCATION)
        def make_gevrey(s, K=DEFAULT_TRUNCATION):
            '''Build G^s truncated at K (default {default_k}).'''

    Placeholders without a matching keyword are kept verbatim.

    :param values: Placeholder names and their replacement values.
    :return Callable[[T], T]: The decorator.
    """
    def replace(match: re.Match) -> str:
        key = match.group(1)
        return str(values[key]) if key in values else match.group(0)

    def decorator(obj: T) -> T:
        if obj.__doc__:
            obj.__doc__ = _PLACEHOLDER_PATTERN.sub(replace, obj.__doc__)
        return obj

    return decorator
