"""Tests for the argument validators, the tagged exceptions and the immutability marker."""
# pylint: disable=import-error,wrong-import-position
import logging
import math
from enum import Enum

import numpy as np
import pytest
from testspec import Assert, TestAction, TestSpec, idspec

from ultravec import _validate
from ultravec._doc_utils import enum_docstrings
from ultravec._error_tags import ArgumentErrorTag
from ultravec._exceptions import (
    ArgumentTypeError,
    BudgetExceeded,
    ConfigError,
    InfeasibleParameters,
    TaggedException,
    TruncationExceeded,
    ValidationError,
    generate_message,
)
from ultravec._immutable import Immutable, frozen_array, is_immutable

log = logging.getLogger(__name__)

TAG = ArgumentErrorTag.NOT_FINITE


@enum_docstrings
class _Colour(str, Enum):
    """Colours."""

    RED = "red"
    """The colour
    of fire."""

    GREEN = "green"


class _Marked(Immutable):
    pass


@pytest.mark.parametrize('testspec', [
    idspec('VALIDATE_001', TestAction(
        name="real_arg accepts an int and returns a float",
        action=_validate.real_arg, args=[3, 'x'],
        validate_result=lambda v: isinstance(v, float) and v == 3.0)),
    idspec('VALIDATE_002', TestAction(
        name="real_arg rejects bool",
        action=_validate.real_arg, args=[True, 'x'],
        exception=ArgumentTypeError, exception_tag=ArgumentErrorTag.NOT_REAL)),
    idspec('VALIDATE_003', TestAction(
        name="real_arg rejects NaN",
        action=_validate.real_arg, args=[math.nan, 'x'],
        exception=ValidationError, exception_tag=ArgumentErrorTag.NOT_FINITE)),
    idspec('VALIDATE_004', TestAction(
        name="positive_real_arg rejects zero",
        action=_validate.positive_real_arg, args=[0.0, 'delta'],
        exception=ValidationError, exception_tag=ArgumentErrorTag.NOT_POSITIVE)),
    idspec('VALIDATE_005', TestAction(
        name="unit_interval_arg rejects 1",
        action=_validate.unit_interval_arg, args=[1.0, 'q'],
        exception=ValidationError, exception_tag=ArgumentErrorTag.NOT_IN_OPEN_UNIT_INTERVAL)),
    idspec('VALIDATE_006', TestAction(
        name="unit_interval_arg accepts 0.5",
        action=_validate.unit_interval_arg, args=[0.5, 'q'],
        expected=0.5)),
    idspec('VALIDATE_007', TestAction(
        name="integer_arg accepts numpy integers",
        action=_validate.integer_arg, args=[np.int64(7), 'k'],
        validate_result=lambda v: type(v) is int and v == 7)),
    idspec('VALIDATE_008', TestAction(
        name="integer_arg rejects floats",
        action=_validate.integer_arg, args=[2.0, 'k'],
        exception=ArgumentTypeError, exception_tag=ArgumentErrorTag.NOT_INTEGER)),
    idspec('VALIDATE_009', TestAction(
        name="integer_arg enforces the minimum",
        action=_validate.integer_arg, args=[1, 'K'], kwargs={'minimum': 2},
        exception=ValidationError, exception_tag=ArgumentErrorTag.INTEGER_TOO_SMALL)),
    idspec('VALIDATE_010', TestAction(
        name="integer_arg enforces the maximum",
        action=_validate.integer_arg, args=[13, 'kmax'], kwargs={'maximum': 12},
        exception=ValidationError, exception_tag=ArgumentErrorTag.INTEGER_TOO_LARGE)),
    idspec('VALIDATE_011', TestAction(
        name="vector_arg rejects a matrix",
        action=_validate.vector_arg, args=[[[1.0, 2.0]], 'x0'],
        exception=ArgumentTypeError, exception_tag=ArgumentErrorTag.NOT_A_VECTOR)),
    idspec('VALIDATE_012', TestAction(
        name="vector_arg rejects an empty sequence",
        action=_validate.vector_arg, args=[[], 'x0'],
        exception=ArgumentTypeError, exception_tag=ArgumentErrorTag.NOT_A_VECTOR)),
    idspec('VALIDATE_013', TestAction(
        name="vector_arg checks the dimension",
        action=_validate.vector_arg, args=[[0.0, 1.0], 'x0', 3],
        exception=ValidationError, exception_tag=ArgumentErrorTag.WRONG_DIMENSION)),
    idspec('VALIDATE_014', TestAction(
        name="vector_arg rejects infinite components",
        action=_validate.vector_arg, args=[[0.0, math.inf], 'x0'],
        exception=ValidationError, exception_tag=ArgumentErrorTag.NOT_FINITE)),
    idspec('VALIDATE_015', TestAction(
        name="unit_vector_arg accepts a unit vector",
        action=lambda: _validate.unit_vector_arg([0.6, 0.8], 'xi0').tolist(),
        expected=[0.6, 0.8])),
    idspec('VALIDATE_016', TestAction(
        name="unit_vector_arg rejects (1, 1)",
        action=_validate.unit_vector_arg, args=[[1.0, 1.0], 'xi0'],
        exception=ValidationError, exception_tag=ArgumentErrorTag.NOT_UNIT_VECTOR)),
])
def test_validators(testspec: TestSpec) -> None:
    """Argument validators."""
    testspec.run()


@pytest.mark.parametrize('testspec', [
    idspec('EXCEPTION_001', TestAction(
        name="the message ends with the tag description",
        action=lambda: str(ValidationError('x is NaN', tag=TAG)),
        expected='x is NaN: The argument must be finite.')),
    idspec('EXCEPTION_002', TestAction(
        name="the tag is kept as tag_code",
        action=lambda: ValidationError('bad', tag=TAG).tag_code,
        expected=TAG)),
    idspec('EXCEPTION_003', TestAction(
        name="a tag that is not an Enum is rejected",
        action=lambda: TaggedException('bad', tag='NOT_AN_ENUM'),  # type: ignore[arg-type]
        exception=TypeError)),
    idspec('EXCEPTION_004', TestAction(
        name="ValidationError is a ValueError",
        action=lambda: isinstance(ValidationError('bad', tag=TAG), ValueError),
        assertion=Assert.TRUE)),
    idspec('EXCEPTION_005', TestAction(
        name="ArgumentTypeError is a TypeError",
        action=lambda: isinstance(ArgumentTypeError('bad', tag=TAG), TypeError),
        assertion=Assert.TRUE)),
    idspec('EXCEPTION_006', TestAction(
        name="BudgetExceeded is a RuntimeError carrying the budget",
        action=lambda: BudgetExceeded('too many terms', tag=TAG, budget=10),
        validate_result=lambda e: isinstance(e, RuntimeError) and e.budget == 10 and '(budget 10)' in str(e))),
    idspec('EXCEPTION_007', TestAction(
        name="TruncationExceeded carries the extrapolated K",
        action=lambda: TruncationExceeded('log t beyond log mu_K', tag=TAG, required_truncation=4096),
        validate_result=lambda e: e.required_truncation == 4096 and 'about K=4096 needed' in str(e))),
    idspec('EXCEPTION_008', TestAction(
        name="InfeasibleParameters carries the failing inequality",
        action=lambda: InfeasibleParameters('rho too small', tag=TAG, inequality='1 < rho*q'),
        validate_result=lambda e: e.inequality == '1 < rho*q' and '[1 < rho*q]' in str(e))),
    idspec('EXCEPTION_009', TestAction(
        name="ConfigError prefixes the position",
        action=lambda: ConfigError('unknown key', tag=TAG, position='regime.V'),
        validate_result=lambda e: e.position == 'regime.V' and str(e).startswith('regime.V: unknown key'))),
    idspec('EXCEPTION_010', TestAction(
        name="generate_message collapses the whitespace of multi-line docstrings",
        action=generate_message, args=['bad colour', _Colour.RED],
        expected='bad colour: The colour of fire.')),
])
def test_exceptions(testspec: TestSpec) -> None:
    """Tagged exceptions."""
    testspec.run()


@pytest.mark.parametrize('testspec', [
    idspec('DOCSTRING_001', TestAction(
        name="a member with a literal gets it as docstring",
        action=lambda: _Colour.RED.__doc__,
        expected="The colour\n    of fire.")),
    idspec('DOCSTRING_002', TestAction(
        name="error tags are documented",
        action=lambda: ArgumentErrorTag.NOT_POSITIVE.__doc__,
        expected="The argument must be strictly positive.")),
])
def test_enum_docstrings(testspec: TestSpec) -> None:
    """Member docstrings."""
    testspec.run()


@pytest.mark.parametrize('testspec', [
    idspec('IMMUTABLE_001', TestAction(
        name="subclasses of Immutable are marked",
        action=is_immutable, args=[_Marked()],
        assertion=Assert.TRUE)),
    idspec('IMMUTABLE_002', TestAction(
        name="plain objects are not marked",
        action=is_immutable, args=[object()],
        assertion=Assert.FALSE)),
    idspec('IMMUTABLE_003', TestAction(
        name="frozen arrays are read-only",
        action=lambda: frozen_array([1, 2, 3]).flags.writeable,
        assertion=Assert.FALSE)),
    idspec('IMMUTABLE_004', TestAction(
        name="frozen arrays are copies",
        action=lambda: np.shares_memory(frozen_array(_SOURCE), _SOURCE),
        assertion=Assert.FALSE)),
    idspec('IMMUTABLE_005', TestAction(
        name="writing to a frozen array fails",
        action=lambda: frozen_array([1.0]).__setitem__(0, 2.0),
        exception=ValueError)),
])
def test_immutable(testspec: TestSpec) -> None:
    """The immutability marker and read-only arrays."""
    testspec.run()


_SOURCE = np.arange(4.0)


if __name__ == '__main__':
    pytest.main([__file__, "--log-cli-level=INFO", '-s'])
