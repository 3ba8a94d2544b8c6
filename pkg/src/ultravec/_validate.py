"""Argument validators.

Use by importing the module and calling ``_validate.<name>_arg(...)``. Each validator returns
the normalized value (a float, int or numpy vector) or raises a tagged exception.
"""
import math
from numbers import Integral, Real
from typing import Any

import numpy as np
from numpy.typing import NDArray

from ._error_tags import ArgumentErrorTag
from ._exceptions import ArgumentTypeError, ValidationError


def real_arg(value: Any, name: str) -> float:
    """Check that value is a finite real number.

    :raises ArgumentTypeError: If value is not a real number.
    :raises ValidationError: If value is NaN or infinite.
    """
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ArgumentTypeError(f'{name} must be a real number, got {value!r}', tag=ArgumentErrorTag.NOT_REAL)
    result = float(value)
    if not math.isfinite(result):
        raise ValidationError(f'{name} must be finite, got {value!r}', tag=ArgumentErrorTag.NOT_FINITE)
    return result


def positive_real_arg(value: Any, name: str) -> float:
    """Check that value is a finite real number greater than zero.

    :raises ArgumentTypeError: If value is not a real number.
    :raises ValidationError: If value is not finite or not positive.
    """
    result = real_arg(value, name)
    if result <= 0.0:
        raise ValidationError(f'{name} must be positive, got {value!r}', tag=ArgumentErrorTag.NOT_POSITIVE)
    return result


def unit_interval_arg(value: Any, name: str) -> float:
    """Check that value lies in the open interval (0, 1).

    :raises ArgumentTypeError: If value is not a real number.
    :raises ValidationError: If value is outside (0, 1).
    """
    result = real_arg(value, name)
    if not 0.0 < result < 1.0:
        raise ValidationError(
            f'{name} must lie in (0, 1), got {value!r}', tag=ArgumentErrorTag.NOT_IN_OPEN_UNIT_INTERVAL)
    return result


def integer_arg(value: Any, name: str, minimum: int | None = None, maximum: int | None = None) -> int:
    """Check that value is an integer within optional bounds.

    :raises ArgumentTypeError: If value is not an integer.
    :raises ValidationError: If value is outside [minimum, maximum].
    """
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise ArgumentTypeError(f'{name} must be an integer, got {value!r}', tag=ArgumentErrorTag.NOT_INTEGER)
    result = int(value)
    if minimum is not None and result < minimum:
        raise ValidationError(
            f'{name} must be at least {minimum}, got {result}', tag=ArgumentErrorTag.INTEGER_TOO_SMALL)
    if maximum is not None and result > maximum:
        raise ValidationError(
            f'{name} must be at most {maximum}, got {result}', tag=ArgumentErrorTag.INTEGER_TOO_LARGE)
    return result


def vector_arg(value: Any, name: str, dimension: int | None = None) -> NDArray:
    """Check that value is a one-dimensional sequence of finite reals.

    :raises ArgumentTypeError: If value cannot be read as a real vector.
    :raises ValidationError: If a component is not finite or the dimension differs.
    """
    try:
        vector = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as err:
        raise ArgumentTypeError(
            f'{name} must be a sequence of reals, got {value!r}', tag=ArgumentErrorTag.NOT_A_VECTOR) from err
    if vector.ndim != 1 or vector.size == 0:
        raise ArgumentTypeError(
            f'{name} must be a non-empty one-dimensional sequence, got {value!r}', tag=ArgumentErrorTag.NOT_A_VECTOR)
    if not np.all(np.isfinite(vector)):
        raise ValidationError(f'{name} must have finite components', tag=ArgumentErrorTag.NOT_FINITE)
    if dimension is not None and vector.size != dimension:
        raise ValidationError(
            f'{name} must have {dimension} components, got {vector.size}', tag=ArgumentErrorTag.WRONG_DIMENSION)
    return vector


def unit_vector_arg(value: Any, name: str, dimension: int | None = None, tol: float = 1e-12) -> NDArray:
    """Check that value is a real vector of Euclidean norm 1.

    :raises ArgumentTypeError: If value cannot be read as a real vector.
    :raises ValidationError: If the norm differs from 1 by more than tol.
    """
    vector = vector_arg(value, name, dimension)
    if abs(float(np.linalg.norm(vector)) - 1.0) > tol:
        raise ValidationError(f'{name} must be a unit vector, got {value!r}', tag=ArgumentErrorTag.NOT_UNIT_VECTOR)
    return vector
