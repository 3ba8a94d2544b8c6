"""Concrete exception classes of ultravec.

All of them are tagged (see :class:`TaggedException`) and derive from the builtin exception
a caller would naturally catch.
"""
from typing import Optional

from ._error_tag import ErrorTag
from ._tagged_exception import TaggedException, generate_message


class ArgumentTypeError(TaggedException[TypeError], TypeError):
    """An argument has the wrong type.

    :param str msg: The error message.
    :param ErrorTag tag: The tag code.
    """
    def __init__(self, msg: str, *, tag: ErrorTag) -> None:
        super().__init__(generate_message(msg, tag), tag=tag)


class ValidationError(TaggedException[ValueError], ValueError):
    """An argument value is invalid or a precondition does not hold.

    :param str msg: The error message.
    :param ErrorTag tag: The tag code.
    """
    def __init__(self, msg: str, *, tag: ErrorTag) -> None:
        super().__init__(generate_message(msg, tag), tag=tag)


class TruncationExceeded(ValidationError):
    """An evaluation needs sequence indices beyond the truncation order.

    :param str msg: The error message.
    :param ErrorTag tag: The tag code.
    :param int | None required_truncation: Extrapolated truncation order that would suffice.
    """
    def __init__(self, msg: str, *, tag: ErrorTag, required_truncation: Optional[int] = None) -> None:
        if required_truncation is not None:
            msg = f"{msg} (about K={required_truncation} needed)"
        super().__init__(msg, tag=tag)
        self.required_truncation = required_truncation
        """Extrapolated truncation order, if one could be estimated."""


class TailDivergent(ValidationError):
    """An integral over an unbounded range has no certified tail.

    :param str msg: The error message.
    :param ErrorTag tag: The tag code.
    """


class InfeasibleParameters(ValidationError):
    """A constraint of a parameter selection is violated.

    :param str msg: The error message.
    :param ErrorTag tag: The tag code.
    :param str inequality: The failing inequality in readable form, for example ``"1 < rho*q"``.
    """
    def __init__(self, msg: str, *, tag: ErrorTag, inequality: str = '') -> None:
        if inequality:
            msg = f"{msg} [{inequality}]"
        super().__init__(msg, tag=tag)
        self.inequality = inequality
        """The failing inequality."""


class BudgetExceeded(TaggedException[RuntimeError], RuntimeError):
    """A symbolic expansion grew beyond its term budget.

    :param str msg: The error message.
    :param ErrorTag tag: The tag code.
    :param int budget: The budget that was exceeded.
    """
    def __init__(self, msg: str, *, tag: ErrorTag, budget: int) -> None:
        super().__init__(generate_message(f"{msg} (budget {budget})", tag), tag=tag)
        self.budget = budget
        """The exceeded term budget."""


class ConfigError(ValidationError):
    """A run configuration cannot be parsed or resolved.

    :param str msg: The error message.
    :param ErrorTag tag: The tag code.
    :param str position: ``line:column`` for syntax errors, a dotted key path otherwise.
    """
    def __init__(self, msg: str, *, tag: ErrorTag, position: str = '') -> None:
        if position:
            msg = f"{position}: {msg}"
        super().__init__(msg, tag=tag)
        self.position = position
        """Where in the configuration the problem was found."""
