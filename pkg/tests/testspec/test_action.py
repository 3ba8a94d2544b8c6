"""Test cases that call a function."""
import traceback
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Optional

from .assertions import NO_EXPECTED_VALUE, Assert, check, needs_expected
from .base import TestSpec


def _unassigned(*args: Any, **kwargs: Any) -> Any:
    raise NotImplementedError('no action assigned')


def _exception_errors(err: BaseException,
                      exception: Optional[type[BaseException]],
                      exception_tag: Optional[str | Enum]) -> list[str]:
    """Compare a raised exception with the expected type and tag.

    An :class:`Enum` tag must equal the ``tag_code`` of the exception; a string tag must occur in
    its message.
    """
    if exception is None:
        return [f'unexpected exception: {err!r}', ''.join(traceback.format_tb(err.__traceback__))]
    if not isinstance(err, exception):
        return [f'unexpected exception type: expected={exception.__name__}, found={err!r}']
    if exception_tag is None:
        return []
    if isinstance(exception_tag, Enum):
        found = getattr(err, 'tag_code', None)
        if found != exception_tag:
            return [f'unexpected exception tag: expected={exception_tag}, found={found}']
        return []
    if str(exception_tag) not in str(err):
        return [f"tag '{exception_tag}' not in exception message: {err!r}"]
    return []


@dataclass
class TestAction(TestSpec):
    """Call ``action(*args, **kwargs)`` and check the outcome.

    The result is compared with ``expected`` by ``assertion`` and, when given, passed to
    ``validate_result``. When ``exception`` is set the call must raise it instead; ``exception_tag``
    then narrows the check to one raise site.
    """
    __test__ = False

    name: str
    action: Callable[..., Any] = _unassigned
    args: Optional[list[Any]] = None
    kwargs: Optional[dict[str, Any]] = None
    assertion: Assert = Assert.EQUAL
    expected: Any = NO_EXPECTED_VALUE
    validate_result: Optional[Callable[[Any], bool]] = None
    exception: Optional[type[BaseException]] = None
    exception_tag: Optional[str | Enum] = None

    def run(self) -> None:
        __tracebackhide__ = True  # pylint: disable=unused-variable
        errors: list[str] = []
        try:
            found = self.action(*(self.args or []), **(self.kwargs or {}))
        except BaseException as err:  # pylint: disable=broad-exception-caught
            errors.extend(_exception_errors(err, self.exception, self.exception_tag))
        else:
            if self.exception is not None:
                errors.append(f'returned {found!r} instead of raising {self.exception.__name__}')
            else:
                if self.validate_result is not None and not self.validate_result(found):
                    errors.append(f'failed result validation: found={found!r}')
                if self.expected is not NO_EXPECTED_VALUE or not needs_expected(self.assertion):
                    failure = check(self.assertion, self.expected, found)
                    if failure:
                        errors.append(failure)
        if errors:
            self._fail(f'{self.name}: ' + '\n'.join(errors))
