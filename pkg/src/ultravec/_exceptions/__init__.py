"""Exceptions raised by ultravec."""
from ._error_tag import ErrorTag
from ._errors import (
    ArgumentTypeError,
    BudgetExceeded,
    ConfigError,
    InfeasibleParameters,
    TailDivergent,
    TruncationExceeded,
    ValidationError,
)
from ._tagged_exception import TaggedException, generate_message

__all__ = [
    "ArgumentTypeError",
    "BudgetExceeded",
    "ConfigError",
    "ErrorTag",
    "InfeasibleParameters",
    "TailDivergent",
    "TaggedException",
    "TruncationExceeded",
    "ValidationError",
    "generate_message",
]
