"""Attach member docstrings to enums.

Error tags and verdict enums document each member with a string literal written directly
below the assignment. Python discards those literals, so this decorator recovers them from
the class source and stores them as the member ``__doc__``. Exception messages are built from
these docstrings (see :func:`ultravec._exceptions.generate_message`).
"""
import ast
import inspect
from enum import Enum
from typing import TypeVar

E = TypeVar("E", bound=Enum)


def enum_docstrings(enum: type[E]) -> type[E]:
    """Attach the string literal following each member assignment as that member's docstring.

    .. code-block:: python3

      @enum_docstrings
      class Verdict(str, Enum):
          '''Three-valued outcome.'''

          HOLDS = "holds"
          '''The property holds on the inspected range.'''

      Verdict.HOLDS.__doc__  # 'The property holds on the inspected range.'

    Members without a following literal keep the class docstring. When the source is not
    available (frozen applications, interactive definitions) the enum is returned unchanged.

    :param type[E] enum: The enum class to process.
    :return type[E]: The same enum class.
    """
    try:
        tree = ast.parse(inspect.getsource(enum))
    except (OSError, TypeError):
        return enum

    if not tree.body or not isinstance(class_def := tree.body[0], ast.ClassDef):
        return enum

    members = enum.__members__
    pending: E | None = None
    for node in class_def.body:
        if isinstance(node, ast.Assign) and len(node.targets) == 1:
            target = node.targets[0]
            pending = members[target.id] if isinstance(target, ast.Name) and target.id in members else None
            continue
        if (pending is not None
                and isinstance(node, ast.Expr)
                and isinstance(node.value, ast.Constant)
                and isinstance(node.value.value, str)
                and pending.__doc__ is enum.__doc__):
            pending.__doc__ = node.value.value
        pending = None
    return enum
