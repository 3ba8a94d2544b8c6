"""Comparison operators of a test case."""
import operator
from enum import Enum
from typing import Any, Callable

NO_EXPECTED_VALUE = object()
"""Marks a test case without an expected value."""


class Assert(str, Enum):
    """How the result of an action is compared with the expected value.

    ``TRUE`` and ``FALSE`` test the truth of the result alone.
    """
    EQUAL = '=='
    NOT_EQUAL = '!='
    LESS_THAN = '<'
    LESS_THAN_OR_EQUAL = '<='
    GREATER_THAN = '>'
    GREATER_THAN_OR_EQUAL = '>='
    IN = 'in'
    ISINSTANCE = 'isinstance'
    TRUE = 'true'
    FALSE = 'false'


_BINARY: dict[Assert, Callable[[Any, Any], bool]] = {
    Assert.EQUAL: operator.eq,
    Assert.NOT_EQUAL: operator.ne,
    Assert.LESS_THAN: operator.lt,
    Assert.LESS_THAN_OR_EQUAL: operator.le,
    Assert.GREATER_THAN: operator.gt,
    Assert.GREATER_THAN_OR_EQUAL: operator.ge,
    Assert.IN: lambda found, expected: expected in found,
    Assert.ISINSTANCE: isinstance,
}


def needs_expected(assertion: Assert) -> bool:
    """Whether the operator compares against an expected value."""
    return assertion not in (Assert.TRUE, Assert.FALSE)


def check(assertion: Assert, expected: Any, found: Any) -> str:
    """Apply an operator.

    :return str: An empty string when the check passes, a failure description otherwise.
    """
    if assertion is Assert.TRUE:
        passed = bool(found)
    elif assertion is Assert.FALSE:
        passed = not found
    else:
        passed = bool(_BINARY[assertion](found, expected))
    if passed:
        return ''
    if needs_expected(assertion):
        return f'Assert.{assertion.name} failed: found={found!r}, expected={expected!r}'
    return f'Assert.{assertion.name} failed: found={found!r}'
