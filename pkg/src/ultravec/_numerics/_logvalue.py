"""Signed real numbers stored as (sign, log|x|)."""
import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

import numpy as np
from scipy.special import logsumexp
from typing_extensions import Self

from .._exceptions import ValidationError
from .._immutable import Immutable
from ._error_tags import NumericsErrorTag

__all__ = ('LogValue', 'log_sum')

_MAX_LOG_FLOAT = math.log(np.finfo(float).max)


@total_ordering
@dataclass(frozen=True)
class LogValue(Immutable):
    """A signed real number held in the natural-log domain.

    Sequences such as ``q^(k^2)`` overflow every binary float long before the indices the
    library works with, so magnitudes are carried as logarithms. Same-sign addition is a
    log-sum-exp and keeps full relative accuracy; opposite signs cancel through ``expm1``.

    :param int sign: -1, 0 or +1.
    :param float log_abs: Natural log of the magnitude, ``-inf`` for zero.
    """
    sign: int
    """Sign of the value."""
    log_abs: float
    """Natural logarithm of the absolute value."""

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValidationError(f'sign must be -1, 0 or 1, got {self.sign!r}', tag=NumericsErrorTag.INVALID_SIGN)
        if math.isnan(self.log_abs) or self.log_abs == math.inf:
            raise ValidationError(
                f'log_abs must be finite or -inf, got {self.log_abs!r}', tag=NumericsErrorTag.INVALID_LOG_MAGNITUDE)
        if (self.sign == 0) != (self.log_abs == -math.inf):
            raise ValidationError(
                f'inconsistent zero encoding ({self.sign}, {self.log_abs})', tag=NumericsErrorTag.ZERO_MISMATCH)

    @classmethod
    def zero(cls) -> Self:
        """The value 0."""
        return cls(0, -math.inf)

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> Self:
        """Build from a log-magnitude; ``-inf`` gives zero regardless of sign."""
        log_abs = float(log_abs)
        if log_abs == -math.inf:
            return cls.zero()
        return cls(sign, log_abs)

    @classmethod
    def from_float(cls, value: float) -> Self:
        """Build from an ordinary float."""
        value = float(value)
        if value == 0.0:
            return cls.zero()
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    def is_zero(self) -> bool:
        """True for the value 0."""
        return self.sign == 0

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log_abs > _MAX_LOG_FLOAT:
            return self.sign * math.inf
        return self.sign * math.exp(self.log_abs)

    def __neg__(self) -> 'LogValue':
        return LogValue(-self.sign, self.log_abs)

    def __add__(self, other: 'LogValue') -> 'LogValue':
        if not isinstance(other, LogValue):
            return NotImplemented
        if other.sign == 0:
            return self
        if self.sign == 0:
            return other
        if self.sign == other.sign:
            return LogValue(self.sign, float(np.logaddexp(self.log_abs, other.log_abs)))
        big, small = (self, other) if self.log_abs >= other.log_abs else (other, self)
        if big.log_abs == small.log_abs:
            return LogValue.zero()
        return LogValue(big.sign, big.log_abs + math.log(-math.expm1(small.log_abs - big.log_abs)))

    def __sub__(self, other: 'LogValue') -> 'LogValue':
        if not isinstance(other, LogValue):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: 'LogValue') -> 'LogValue':
        if not isinstance(other, LogValue):
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other: 'LogValue') -> 'LogValue':
        if not isinstance(other, LogValue):
            return NotImplemented
        if other.sign == 0:
            raise ValidationError('division by a zero LogValue', tag=NumericsErrorTag.DIVISION_BY_ZERO)
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def __lt__(self, other: 'LogValue') -> bool:
        if not isinstance(other, LogValue):
            return NotImplemented
        if self.sign != other.sign:
            return self.sign < other.sign
        if self.sign > 0:
            return self.log_abs < other.log_abs
        if self.sign < 0:
            return self.log_abs > other.log_abs
        return False


def log_sum(values: Iterable[LogValue]) -> LogValue:
    """Sum LogValues in one signed log-sum-exp pass.

    :param Iterable[LogValue] values: Terms in summation order.
    :return LogValue: The exact-sign sum.
    """
    terms = [value for value in values if value.sign != 0]
    if not terms:
        return LogValue.zero()
    logs = np.array([term.log_abs for term in terms])
    signs = np.array([term.sign for term in terms], dtype=float)
    result, sign = logsumexp(logs, b=signs, return_sign=True)
    if sign == 0 or not np.isfinite(result):
        return LogValue.zero()
    return LogValue(int(sign), float(result))
