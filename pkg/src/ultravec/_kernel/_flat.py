"""The flat kernel ``Phi_N(t) = exp(-omega_N(t))`` and its moments.

On the positive axis ``Phi_N`` equals ``h_N(1/t)``, so both pointwise flatness estimates hold
with all four constants equal to 1. On the cell ``[mu_j, mu_(j+1))`` the kernel is the pure
power ``N_j t^(-j)`` and every moment has a closed form per cell.
"""
import math
import threading
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import logsumexp

from .. import _validate
from .._assocweight import AssociatedWeight, omega, omega_values
from .._constants import CAP_REL_TOL, MOMENT_TAIL_MARGIN, MOMENT_TAIL_REL_TOL
from .._exceptions import ArgumentTypeError, TailDivergent
from .._immutable import Immutable
from .._log import log
from .._numerics import LogValue, piecewise_power_cells, power_integral_cap
from .._weightseq import WeightSequence
from ._error_tags import KernelErrorTag

__all__ = (
    'FlatKernel',
    'PointwiseBounds',
    'effective_cap',
    'kernel_value',
    'kernel_values',
    'moment',
    'moment_tail',
    'pointwise_bounds',
    'prefix_moment',
)

_LOG_TAIL_REL_TOL = math.log(MOMENT_TAIL_REL_TOL)


class PointwiseBounds(NamedTuple):
    """``A_1 h_N(B_1/t) <= Phi(t) <= A_2 h_N(B_2/t)`` at one argument."""
    lower: LogValue
    """``A_1 h_N(B_1/t)``."""
    value: LogValue
    """``Phi(t)``."""
    upper: LogValue
    """``A_2 h_N(B_2/t)``."""


class FlatKernel(Immutable):
    """The kernel ``Phi_N`` of a weight sequence N.

    Moments are memoised per ``(k, lower)``.

    :param WeightSequence seq: The sequence N.
    :raises ArgumentTypeError: If seq is not a WeightSequence.
    """
    __slots__ = ('_seq', '_weight', '_moments', '_lock')

    lower_constants: tuple[float, float] = (1.0, 1.0)
    """``(A_1, B_1)`` of the lower pointwise estimate."""
    upper_constants: tuple[float, float] = (1.0, 1.0)
    """``(A_2, B_2)`` of the upper pointwise estimate."""

    def __init__(self, seq: WeightSequence) -> None:
        if not isinstance(seq, WeightSequence):
            raise ArgumentTypeError(
                f'seq must be a WeightSequence, got {type(seq).__name__}', tag=KernelErrorTag.NOT_A_WEIGHT_SEQUENCE)
        self._seq = seq
        self._weight = AssociatedWeight(seq)
        self._moments: dict[tuple[int, float], tuple[float, float]] = {}
        self._lock = threading.RLock()

    @property
    def seq(self) -> WeightSequence:
        """The sequence N."""
        return self._seq

    @property
    def weight(self) -> AssociatedWeight:
        """The evaluator of ``omega_N``."""
        return self._weight

    def __setattr__(self, name: str, value: object) -> None:
        if hasattr(self, '_lock'):
            raise AttributeError(f'{type(self).__name__} is immutable')
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f'FlatKernel({self._seq})'

    def _moment(self, k: int, lower: float) -> tuple[float, float]:
        key = (k, lower)
        cached = self._moments.get(key)
        if cached is not None:
            log.debug("moment: cache hit for k=%d, lower=%s", k, lower)
            return cached
        with self._lock:
            if key not in self._moments:
                cells = piecewise_power_cells(self._seq, float(k), lower)
                self._moments[key] = (float(logsumexp(cells)), float(cells[-1]))
                log.debug("moment: computed k=%d, lower=%s for %s", k, lower, self._seq)
            return self._moments[key]


def kernel_value(kernel: FlatKernel, logt: float) -> LogValue:
    """``Phi_N(t) = exp(-omega_N(t))``.

    :raises TruncationExceeded: If ``log t > log mu_K``.
    """
    return LogValue.from_log(-omega(kernel.weight, logt))


def kernel_values(kernel: FlatKernel, logt: ArrayLike) -> NDArray:
    """``log Phi_N`` at many arguments."""
    return -omega_values(kernel.weight, logt)


def pointwise_bounds(kernel: FlatKernel, logt: float) -> PointwiseBounds:
    """Both pointwise flatness estimates at ``t``, with the recorded constants."""
    log_a1, log_b1 = (math.log(c) for c in kernel.lower_constants)
    log_a2, log_b2 = (math.log(c) for c in kernel.upper_constants)
    return PointwiseBounds(
        LogValue.from_log(log_a1 - omega(kernel.weight, logt - log_b1)),
        kernel_value(kernel, logt),
        LogValue.from_log(log_a2 - omega(kernel.weight, logt - log_b2)))


def _checked_moment(kernel: FlatKernel, k: int, lower: float) -> tuple[float, float]:
    k = _validate.integer_arg(k, 'k', minimum=0)
    lower = _validate.real_arg(lower, 'lower')
    truncation = kernel.seq.truncation
    if truncation < k + MOMENT_TAIL_MARGIN:
        raise TailDivergent(
            f'moment k={k} needs K >= {k + MOMENT_TAIL_MARGIN}, got K={truncation}',
            tag=KernelErrorTag.TAIL_MARGIN_TOO_SHORT)
    total, tail = kernel._moment(k, lower)  # pylint: disable=protected-access
    if tail - total > _LOG_TAIL_REL_TOL:
        raise TailDivergent(
            f'tail share exp({tail - total:.3g}) of moment k={k} exceeds {MOMENT_TAIL_REL_TOL}',
            tag=KernelErrorTag.TAIL_NOT_CERTIFIED)
    return total, tail


def moment(kernel: FlatKernel, k: int, lower: float = 0.0) -> LogValue:
    """``I_k = int_lower^inf t^k Phi_N(t) dt`` in closed form.

    :param FlatKernel kernel: The kernel.
    :param int k: Moment order.
    :param float lower: Lower limit, non-negative.
    :return LogValue: The moment, including the certified remainder beyond ``mu_K``.
    :raises TailDivergent: If ``K < k + 16`` or the remainder exceeds ``1e-10`` of the total.
    """
    return LogValue.from_log(_checked_moment(kernel, k, lower)[0])


def moment_tail(kernel: FlatKernel, k: int, lower: float = 0.0) -> float:
    """Log of the remainder of :func:`moment` beyond ``mu_K``."""
    return _checked_moment(kernel, k, lower)[1]


def prefix_moment(kernel: FlatKernel, k: int, upper: float = 1.0) -> LogValue:
    """``int_0^upper t^k Phi_N(t) dt``, at most ``upper^(k+1)/(k+1)`` since ``Phi_N <= 1``."""
    k = _validate.integer_arg(k, 'k', minimum=0)
    upper = _validate.positive_real_arg(upper, 'upper')
    full = piecewise_power_cells(kernel.seq, float(k))
    rest = piecewise_power_cells(kernel.seq, float(k), upper)
    with np.errstate(divide='ignore', invalid='ignore'):
        cells = np.where(rest == -math.inf, full, full + np.log(-np.expm1(np.minimum(rest - full, 0.0))))
    return LogValue.from_log(float(logsumexp(cells)))


def effective_cap(kernel: FlatKernel, power: float, rel_tol: float = CAP_REL_TOL) -> float:
    """A T with ``int_T^inf t^power Phi_N <= rel_tol * int_0^inf t^power Phi_N``."""
    power = _validate.real_arg(power, 'power')
    rel_tol = _validate.unit_interval_arg(rel_tol, 'rel_tol')
    return power_integral_cap(kernel.seq, power, rel_tol)
