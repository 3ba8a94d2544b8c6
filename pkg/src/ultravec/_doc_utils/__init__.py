"""Documentation helpers shared by the ultravec modules."""
from ._enum_docstrings import enum_docstrings
from ._format_docstring import format_docstring

__all__ = ["enum_docstrings", "format_docstring"]
