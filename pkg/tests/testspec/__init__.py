"""Declarative test cases for pytest parametrization."""
from .assertions import NO_EXPECTED_VALUE, Assert
from .base import TestSpec
from .idspec import idspec
from .test_action import TestAction

__all__ = [
    "Assert",
    "NO_EXPECTED_VALUE",
    "TestAction",
    "TestSpec",
    "idspec",
]
