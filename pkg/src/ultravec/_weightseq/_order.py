"""Order relations between weight sequences."""
from typing import NamedTuple, Optional

import numpy as np
from numpy.typing import NDArray

from .._constants import GROWTH_DRIFT_TOL
from .._exceptions import ValidationError
from .._numerics import GrowthFit, Trend, fit_growth, tail_trend
from ._error_tags import WeightSeqErrorTag
from ._family import dominance_order, exact_terms
from ._sequence import WeightSequence
from ._verdicts import OrderRelation, Verdict

__all__ = ('OrderVerdict', 'order_relation')


class OrderVerdict(NamedTuple):
    """Outcome of :func:`order_relation`."""
    relation: OrderRelation
    """The tested relation."""
    holds: Verdict
    """The verdict."""
    log_c: float
    """Fitted log C of ``M_k <= C h^k N_k`` over the table (log A for ``dominatedBy``)."""
    log_h: float
    """Fitted log h (0 for ``dominatedBy``)."""
    violating_index: Optional[int]
    """First index beyond K/4 that breaks the bound fitted on ``k <= K/4``, when the relation fails."""
    margin: float
    """Tail slope of ``(log M_k - log N_k)/k``."""
    symbolic: bool
    """True when the verdict comes from the exact family rules."""


def _violating_index(r: NDArray) -> Optional[int]:
    """First index beyond the first quarter that breaks the bound fitted on the first quarter."""
    quarter = max(3, r.size // 4)
    head = fit_growth(r[:quarter + 1], np.zeros(quarter + 1))
    ks = np.arange(r.size, dtype=float)
    excess = (r - ks * head.log_h) - head.log_c
    scale = 1e-12 * np.maximum(1.0, np.abs(r))
    bad = np.flatnonzero(excess[quarter + 1:] > scale[quarter + 1:])
    return int(bad[0]) + quarter + 1 if bad.size else None


class _Numeric(NamedTuple):
    fit: GrowthFit
    trend: Trend
    margin: float


def _numeric(r: NDArray) -> _Numeric:
    ks = np.arange(1, r.size, dtype=float)
    trend = tail_trend(r[1:] / ks, start=1)
    return _Numeric(fit_growth(r, np.zeros(r.size)), trend.trend, trend.slope)


def _symbolic_class(m: WeightSequence, n: WeightSequence) -> Optional[str]:
    """``'equal'``, ``'geometric'``, ``'smaller'`` or ``'larger'`` growth of M against N, or None."""
    tm = exact_terms(m.family)
    tn = exact_terms(n.family)
    if tm is None or tn is None:
        return None
    difference = dict(tm)
    for key, value in tn.items():
        difference[key] = difference.get(key, 0.0) - value
    ordered = dominance_order(difference)
    if not ordered:
        return 'equal'
    key, coefficient = ordered[0]
    if key == 'k':
        return 'geometric'
    return 'smaller' if coefficient < 0 else 'larger'


def _preceq(r: NDArray, cls: Optional[str]) -> tuple[Verdict, _Numeric, bool]:
    numeric = _numeric(r)
    if cls is not None:
        return (Verdict.FAILS if cls == 'larger' else Verdict.HOLDS), numeric, True
    if numeric.trend is Trend.RISING:
        return Verdict.FAILS, numeric, False
    if numeric.trend is Trend.MIXED or numeric.fit.drift > GROWTH_DRIFT_TOL:
        return Verdict.INCONCLUSIVE, numeric, False
    return Verdict.HOLDS, numeric, False


def _flip(cls: Optional[str]) -> Optional[str]:
    return {'smaller': 'larger', 'larger': 'smaller'}.get(cls, cls) if cls is not None else None


def order_relation(m: WeightSequence, n: WeightSequence, relation: OrderRelation, *,
                   log_a: float = 0.0, symbolic: bool = True) -> OrderVerdict:
    """Decide ``M relation N`` on the table.

    ``preceq`` fits the exact bound ``M_k <= C h^k N_k`` and fails when
    ``(log M_k - log N_k)/k`` trends upwards. ``lhd`` holds when that quotient trends
    downwards. ``approx`` and ``precnapprox`` combine both directions of ``preceq``.
    ``dominatedBy`` is the pointwise check ``M_k <= A N_k`` with ``A = e^log_a``.
    Sequences built from the built-in families are compared exactly by the dominant term of
    ``log M_k - log N_k``.

    :param WeightSequence m: Left sequence.
    :param WeightSequence n: Right sequence.
    :param OrderRelation relation: The relation.
    :param float log_a: log A for ``dominatedBy``.
    :param bool symbolic: Use the exact family rules when available.
    :return OrderVerdict: Verdict, witness constants, violating index and tail margin.
    :raises ValidationError: If the truncations differ.
    """
    if m.truncation != n.truncation:
        raise ValidationError(
            f'truncations differ: {m.truncation} and {n.truncation}', tag=WeightSeqErrorTag.TRUNCATION_MISMATCH)
    r = m.log_m - n.log_m
    relation = OrderRelation(relation)

    if relation is OrderRelation.DOMINATED_BY:
        excess = r - log_a
        bad = np.flatnonzero(excess > 1e-12 * np.maximum(1.0, np.abs(n.log_m)))
        verdict = Verdict.FAILS if bad.size else Verdict.HOLDS
        index = int(bad[0]) if bad.size else None
        margin = _numeric(r).margin
        return OrderVerdict(relation, verdict, float(np.max(r)), 0.0, index, margin, False)

    cls = _symbolic_class(m, n) if symbolic else None
    forward, numeric, exact = _preceq(r, cls)
    witness = (numeric.fit.log_c, numeric.fit.log_h)

    match relation:
        case OrderRelation.PRECEQ:
            verdict = forward
        case OrderRelation.LHD:
            if cls is not None:
                verdict = Verdict.HOLDS if cls == 'smaller' else Verdict.FAILS
            elif numeric.trend is Trend.FALLING:
                verdict = Verdict.HOLDS
            elif numeric.trend is Trend.MIXED:
                verdict = Verdict.INCONCLUSIVE
            else:
                verdict = Verdict.FAILS
        case _:
            backward, _, _ = _preceq(-r, _flip(cls))
            if relation is OrderRelation.APPROX:
                if Verdict.FAILS in (forward, backward):
                    verdict = Verdict.FAILS
                elif forward is Verdict.HOLDS and backward is Verdict.HOLDS:
                    verdict = Verdict.HOLDS
                else:
                    verdict = Verdict.INCONCLUSIVE
            elif forward is Verdict.FAILS or backward is Verdict.HOLDS:
                verdict = Verdict.FAILS
            elif forward is Verdict.HOLDS and backward is Verdict.FAILS:
                verdict = Verdict.HOLDS
            else:
                verdict = Verdict.INCONCLUSIVE

    index = _violating_index(r) if forward is Verdict.FAILS else None
    if relation is OrderRelation.APPROX and index is None and verdict is Verdict.FAILS:
        index = _violating_index(-r)
    return OrderVerdict(relation, verdict, witness[0], witness[1], index, numeric.margin, exact)
