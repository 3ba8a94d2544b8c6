"""The WeightSequence value type and its constructors."""
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .. import _validate
from .._constants import DEFAULT_TRUNCATION, LOG_CONVEXITY_TOL, MIN_TRUNCATION
from .._doc_utils import format_docstring
from .._exceptions import ValidationError
from .._immutable import Immutable, frozen_array
from .._numerics import Trend, tail_trend
from ._error_tags import WeightSeqErrorTag
from ._family import Family, FamilyTag

__all__ = (
    'WeightSequence',
    'from_log_table',
    'make_gevrey',
    'make_logpower',
    'make_qpower',
    'power',
    'product',
    'rescale',
)

_CUSTOM = FamilyTag(Family.CUSTOM)
_ROUNDING = 8.0 * float(np.finfo(float).eps)


class WeightSequence(Immutable):
    """A weight sequence ``M_0, ..., M_K`` held as ``log M_k``.

    Construction validates the weight-sequence axioms on the table: ``M_0 = 1 <= M_1``,
    log-convexity (``mu_k = M_k / M_(k-1)`` non-decreasing), non-decreasing roots
    ``M_k^(1/k)``, and growth of ``mu_k`` over the tail (a constant or eventually constant
    ``mu`` is rejected).

    :param ArrayLike log_m: ``log M_0 .. log M_K``.
    :param FamilyTag | None family: Symbolic description, ``Custom`` when omitted.
    :param float tol: Absolute tolerance of the axiom checks, on top of the rounding error of each difference.
    :raises ValidationError: If an axiom fails.
    """
    __slots__ = ('_log_m', '_log_mu', '_family')

    def __init__(self, log_m: ArrayLike, family: Optional[FamilyTag] = None, *,
                 tol: float = LOG_CONVEXITY_TOL) -> None:
        table = np.asarray(log_m, dtype=float)
        if table.ndim != 1 or table.size < MIN_TRUNCATION + 1:
            raise ValidationError(
                f'need log M_0..log M_K with K >= {MIN_TRUNCATION}, got shape {table.shape}',
                tag=WeightSeqErrorTag.TRUNCATION_TOO_SMALL)
        if not np.all(np.isfinite(table)):
            raise ValidationError('log M_k must be finite', tag=WeightSeqErrorTag.NOT_FINITE)
        if abs(table[0]) > tol:
            raise ValidationError(f'log M_0 must be 0, got {table[0]!r}', tag=WeightSeqErrorTag.NOT_NORMALIZED)
        if table[1] < -tol:
            raise ValidationError(f'M_1 must be >= 1, got log M_1 = {table[1]!r}', tag=WeightSeqErrorTag.M1_BELOW_ONE)
        table = table.copy()
        table[0] = 0.0
        magnitude = np.abs(table)
        second = table[2:] + table[:-2] - 2.0 * table[1:-1]
        rounding = _ROUNDING * (magnitude[2:] + magnitude[:-2] + 2.0 * magnitude[1:-1])
        bad = np.flatnonzero(second < -(tol + rounding))
        if bad.size:
            raise ValidationError(
                f'log-convexity fails at k={int(bad[0]) + 1}', tag=WeightSeqErrorTag.NOT_LOG_CONVEX)
        ks = np.arange(1, table.size, dtype=float)
        roots = table[1:] / ks
        rounding = _ROUNDING * (np.abs(roots[1:]) + np.abs(roots[:-1]))
        bad = np.flatnonzero(np.diff(roots) < -(tol + rounding))
        if bad.size:
            raise ValidationError(
                f'log M_k / k decreases at k={int(bad[0]) + 2}', tag=WeightSeqErrorTag.ROOTS_NOT_INCREASING)
        log_mu = np.concatenate(([-math.inf], np.diff(table)))
        if not log_mu[-1] > log_mu[1] + tol:
            raise ValidationError('mu_K must exceed mu_1', tag=WeightSeqErrorTag.MU_NOT_UNBOUNDED)
        if log_mu.size - 1 >= 4 and tail_trend(log_mu[1:], start=1, tol=0.0).trend is not Trend.RISING:
            raise ValidationError(
                'mu_k stops growing over the tail of the table', tag=WeightSeqErrorTag.MU_NOT_UNBOUNDED)
        self._log_m = frozen_array(table)
        self._log_mu = frozen_array(log_mu)
        self._family = family if family is not None else _CUSTOM

    @property
    def log_m(self) -> NDArray:
        """Read-only ``log M_0 .. log M_K``."""
        return self._log_m

    @property
    def log_mu(self) -> NDArray:
        """Read-only ``log mu_k`` for ``k = 0..K`` with ``log mu_0 = -inf``."""
        return self._log_mu

    @property
    def truncation(self) -> int:
        """The truncation order K."""
        return self._log_m.size - 1

    @property
    def family(self) -> FamilyTag:
        """The symbolic family tag."""
        return self._family

    def __setattr__(self, name: str, value: object) -> None:
        if hasattr(self, '_family'):
            raise AttributeError(f'{type(self).__name__} is immutable')
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f'WeightSequence({self._family}, K={self.truncation})'


def _log_factorials(truncation: int) -> NDArray:
    return np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, truncation + 1, dtype=float)))))


@format_docstring(default_k=DEFAULT_TRUNCATION)
def make_gevrey(s: float, truncation: int = DEFAULT_TRUNCATION) -> WeightSequence:
    """The Gevrey sequence ``(k!)^s`` with ``log k!`` as a cumulative sum of logs.

    :param float s: Gevrey order, at least 1.
    :param int truncation: K (default {default_k}).
    :return WeightSequence: Tagged ``Gevrey(s)``.
    :raises ValidationError: If s < 1.
    """
    s = _validate.real_arg(s, 's')
    if s < 1.0:
        raise ValidationError(f's must be at least 1, got {s}', tag=WeightSeqErrorTag.GEVREY_ORDER_BELOW_ONE)
    truncation = _validate.integer_arg(truncation, 'truncation', minimum=MIN_TRUNCATION)
    return WeightSequence(s * _log_factorials(truncation), FamilyTag(Family.GEVREY, (s,)))


@format_docstring(default_k=DEFAULT_TRUNCATION)
def make_qpower(q: float, r: float, truncation: int = DEFAULT_TRUNCATION) -> WeightSequence:
    """The sequence ``q^(k^r)``.

    :param float q: Base, greater than 1.
    :param float r: Exponent, greater than 1.
    :param int truncation: K (default {default_k}).
    :return WeightSequence: Tagged ``QPower(q, r)``.
    :raises ValidationError: If q <= 1 or r <= 1.
    """
    q = _validate.real_arg(q, 'q')
    r = _validate.real_arg(r, 'r')
    if q <= 1.0:
        raise ValidationError(f'q must exceed 1, got {q}', tag=WeightSeqErrorTag.BASE_NOT_ABOVE_ONE)
    if r <= 1.0:
        raise ValidationError(f'r must exceed 1, got {r}', tag=WeightSeqErrorTag.EXPONENT_NOT_ABOVE_ONE)
    truncation = _validate.integer_arg(truncation, 'truncation', minimum=MIN_TRUNCATION)
    ks = np.arange(truncation + 1, dtype=float)
    return WeightSequence(ks ** r * math.log(q), FamilyTag(Family.QPOWER, (q, r)))


@format_docstring(default_k=DEFAULT_TRUNCATION)
def make_logpower(sigma: float, truncation: int = DEFAULT_TRUNCATION) -> WeightSequence:
    """The sequence ``k! log(e+k)^(sigma*k)``.

    :param float sigma: Positive exponent.
    :param int truncation: K (default {default_k}).
    :return WeightSequence: Tagged ``LogPower(sigma)``.
    """
    sigma = _validate.positive_real_arg(sigma, 'sigma')
    truncation = _validate.integer_arg(truncation, 'truncation', minimum=MIN_TRUNCATION)
    ks = np.arange(truncation + 1, dtype=float)
    log_m = _log_factorials(truncation) + sigma * ks * np.log(np.log(math.e + ks))
    return WeightSequence(log_m, FamilyTag(Family.LOGPOWER, (sigma,)))


def from_log_table(log_m: ArrayLike, family: Optional[FamilyTag] = None) -> WeightSequence:
    """A sequence from an explicit ``log M_k`` table, tagged ``Custom`` unless given."""
    return WeightSequence(log_m, family)


def _product_family(left: FamilyTag, right: FamilyTag) -> FamilyTag:
    if left.kind is Family.GEVREY and right.kind is Family.GEVREY:
        return FamilyTag(Family.GEVREY, (left.params[0] + right.params[0],))
    if left.kind is Family.QPOWER and right.kind is Family.QPOWER and left.params[1] == right.params[1]:
        return FamilyTag(Family.QPOWER, (left.params[0] * right.params[0], left.params[1]))
    if left.kind is Family.CUSTOM or right.kind is Family.CUSTOM:
        return _CUSTOM
    return FamilyTag(Family.PRODUCT, (), (left, right))


def _power_family(base: FamilyTag, tau: float) -> FamilyTag:
    match base.kind:
        case Family.GEVREY:
            return FamilyTag(Family.GEVREY, (base.params[0] * tau,))
        case Family.QPOWER:
            return FamilyTag(Family.QPOWER, (base.params[0] ** tau, base.params[1]))
        case Family.POWER:
            return FamilyTag(Family.POWER, (base.params[0] * tau,), base.parts)
        case Family.CUSTOM:
            return _CUSTOM
    return FamilyTag(Family.POWER, (tau,), (base,))


def product(m: WeightSequence, n: WeightSequence) -> WeightSequence:
    """The pointwise product ``M_k N_k``.

    Products of Gevrey sequences, and of q-power sequences with equal r, stay in their family.

    :raises ValidationError: If the truncations differ.
    """
    if m.truncation != n.truncation:
        raise ValidationError(
            f'truncations differ: {m.truncation} and {n.truncation}', tag=WeightSeqErrorTag.TRUNCATION_MISMATCH)
    return WeightSequence(m.log_m + n.log_m, _product_family(m.family, n.family))


def power(m: WeightSequence, tau: float) -> WeightSequence:
    """The pointwise power ``M_k^tau``.

    :raises ValidationError: If tau is not positive.
    """
    tau = _validate.positive_real_arg(tau, 'tau')
    return WeightSequence(tau * m.log_m, _power_family(m.family, tau))


def rescale(m: WeightSequence, log_h: float) -> WeightSequence:
    """The geometric rescaling ``h^k M_k``.

    :raises ValidationError: If the result has ``M_1 < 1``.
    """
    log_h = _validate.real_arg(log_h, 'log_h')
    family = _CUSTOM if m.family.kind is Family.CUSTOM else FamilyTag(Family.RESCALED, (log_h,), (m.family,))
    return WeightSequence(m.log_m + log_h * np.arange(m.truncation + 1), family)
