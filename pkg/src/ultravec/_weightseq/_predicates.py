"""Classification predicates: quasianalyticity, strong non-quasianalyticity, analytic inclusion, derivation closure.

Every predicate has an exact path for sequences built from the Gevrey, q-power and
log-power families (through products, powers and rescalings), and a heuristic path that
reads the table with the tail-window convention of :func:`ultravec._numerics.tail_trend`.
The exact path is used unless ``symbolic=False`` or the sequence is a custom table.
"""
import math
from typing import NamedTuple, Optional

import numpy as np
from numpy.typing import NDArray
from scipy.special import gammaln, logsumexp

from .._exceptions import ValidationError
from .._immutable import frozen_array
from .._log import log
from .._numerics import TailTrend, Trend, tail_trend
from ._error_tags import WeightSeqErrorTag
from ._family import ExactTerms, exact_terms
from ._gamma import GammaEstimate, gamma_index
from ._sequence import WeightSequence
from ._verdicts import Quasianalyticity, Verdict

__all__ = (
    'Classification',
    'PredicateResult',
    'QuasianalyticitySum',
    'StrongNonQuasianalyticity',
    'analytic_inclusion',
    'classify',
    'derivation_closed',
    'quasianalyticity_sum',
    'remainder_bound',
    'strong_nonquasianalyticity',
)

_EXACT_TOL = 1e-12
_BOUND_MARGIN = 1e-6
"""Smallest excess of the extrapolated growth rate over the summability threshold."""
_STEADY_TOL = 1e-6
"""Relative rounding slack when comparing growth rates across the tail window."""


class QuasianalyticitySum(NamedTuple):
    """Result of :func:`quasianalyticity_sum`."""
    partial_sum: float
    """``sum_(k=0)^J 1/mu_(k+1)``."""
    tail_bound: float
    """Upper bound on the rest of the series, ``inf`` when no bound is available."""
    verdict: Quasianalyticity
    """The Denjoy-Carleman verdict."""
    symbolic: bool
    """True when the verdict comes from the exact family rules."""


class StrongNonQuasianalyticity(NamedTuple):
    """Result of :func:`strong_nonquasianalyticity`."""
    a_hat: float
    """Largest ratio of the tail sum to ``(j+1)/mu_(j+1)``."""
    log_ratios: NDArray
    """Log of the ratio for ``j = 0..j_max`` (read-only)."""
    verdict: Verdict
    """Whether the ratios stay bounded."""
    symbolic: bool
    """True when the verdict comes from the exact family rules."""
    diagnostic: str
    """Why a heuristic verdict is inconclusive, empty otherwise."""


class PredicateResult(NamedTuple):
    """Verdict of a tail-window predicate."""
    verdict: Verdict
    """The verdict."""
    trend: Optional[TailTrend]
    """The tail statistic of the inspected quantity, ``None`` on the exact path."""
    symbolic: bool
    """True when the verdict comes from the exact family rules."""


class Classification(NamedTuple):
    """All classification predicates of one sequence."""
    quasianalyticity: Quasianalyticity
    """Denjoy-Carleman verdict."""
    strongly_nonquasianalytic: Verdict
    """Strong non-quasianalyticity."""
    analytic_inclusion: Verdict
    """``M_k / k!`` grows faster than any geometric sequence."""
    derivation_closed: Verdict
    """``mu_k^(1/k)`` is bounded."""
    gamma: Optional[GammaEstimate]
    """The growth index, ``None`` when the table is too short for the estimator."""


class _Growth(NamedTuple):
    top_power: float
    """Largest r with a positive ``k^r`` term, 1.0 when there is none."""
    factorial: float
    """Coefficient s of ``log k!``."""
    loglog: float
    """Coefficient sigma of ``k log log(e+k)``."""


def _growth(terms: ExactTerms) -> _Growth:
    powers = [key[1] for key, value in terms.items() if isinstance(key, tuple) and value > _EXACT_TOL]
    return _Growth(max(powers, default=1.0), terms.get('logfact', 0.0), terms.get('kloglog', 0.0))


def _exact(m: WeightSequence, symbolic: bool) -> Optional[_Growth]:
    if not symbolic:
        return None
    terms = exact_terms(m.family)
    return None if terms is None else _growth(terms)


def _is_one(value: float) -> bool:
    return abs(value - 1.0) <= _EXACT_TOL


def _steady(values: NDArray) -> bool:
    """True when the second half of values never drops below the first half."""
    half = values.size // 2
    head = float(values[:half].max())
    return float(values[half:].min()) >= head - _STEADY_TOL * max(1.0, abs(head))


def remainder_bound(m: WeightSequence) -> float:
    """Log of an upper bound on ``sum_(n>K) 1/mu_n`` extrapolated from the tail of the table.

    Two bounds are tried: a power bound ``mu_n >= mu_K (n/K)^p`` when the local log-log
    slopes stay above ``p > 1`` and do not decrease, and a ratio bound ``mu_(n+1) >= theta mu_n``
    when the log ratios stay above ``log theta > 0`` and do not decrease.

    :return float: The log bound, ``inf`` when neither bound applies.
    """
    truncation = m.truncation
    if truncation < 9:
        return math.inf
    width = max(8, math.ceil(truncation / 4))
    first = truncation - width
    log_mu = m.log_mu[first:]
    log_n = np.log(np.arange(first, truncation + 1, dtype=float))
    steps = np.diff(log_mu)
    bounds = [math.inf]
    slopes = steps / np.diff(log_n)
    p = float(np.min(slopes))
    if p > 1.0 + _BOUND_MARGIN and _steady(slopes):
        bounds.append(math.log(truncation) - math.log(p - 1.0) - float(m.log_mu[-1]))
    log_theta = float(np.min(steps))
    if log_theta > _BOUND_MARGIN and _steady(steps):
        bounds.append(-float(m.log_mu[-1]) - math.log(math.expm1(log_theta)))
    return min(bounds)


def quasianalyticity_sum(m: WeightSequence, j: Optional[int] = None, *, symbolic: bool = True) -> QuasianalyticitySum:
    """Partial Denjoy-Carleman sum ``sum_(k=0)^J M_k / M_(k+1)`` with a tail bound and verdict.

    :param WeightSequence m: The sequence.
    :param int | None j: Last index J, at most ``K - 1`` (default ``K - 1``).
    :param bool symbolic: Use the exact family rules when available.
    :return QuasianalyticitySum: Partial sum, tail bound and verdict.
    :raises ValidationError: If J is out of range.
    """
    truncation = m.truncation
    j = truncation - 1 if j is None else j
    if not 0 <= j <= truncation - 1:
        raise ValidationError(f'J must lie in [0, {truncation - 1}], got {j}', tag=WeightSeqErrorTag.INDEX_OUT_OF_RANGE)
    inverse = -m.log_mu
    partial = math.exp(float(logsumexp(inverse[1:j + 2])))
    remainder = remainder_bound(m)
    pieces = [remainder]
    if j + 2 <= truncation:
        pieces.append(float(logsumexp(inverse[j + 2:])))
    tail = math.exp(float(logsumexp(pieces))) if math.isfinite(remainder) else math.inf

    growth = _exact(m, symbolic)
    if growth is not None:
        nonquasianalytic = (growth.top_power > 1.0 or growth.factorial > 1.0 + _EXACT_TOL
                            or (_is_one(growth.factorial) and growth.loglog > 1.0 + _EXACT_TOL))
        verdict = Quasianalyticity.NON_QUASIANALYTIC if nonquasianalytic else Quasianalyticity.QUASIANALYTIC
        return QuasianalyticitySum(partial, tail, verdict, True)

    if math.isfinite(tail):
        verdict = Quasianalyticity.NON_QUASIANALYTIC
    else:
        ks = np.arange(1, truncation + 1, dtype=float)
        excess = tail_trend(m.log_mu[1:] - np.log(ks), start=1)
        verdict = Quasianalyticity.QUASIANALYTIC if excess.trend is not Trend.RISING else Quasianalyticity.INCONCLUSIVE
    return QuasianalyticitySum(partial, tail, verdict, False)


def strong_nonquasianalyticity(m: WeightSequence, j_max: Optional[int] = None, *,
                               symbolic: bool = True) -> StrongNonQuasianalyticity:
    """Ratios ``sum_(k>j) M_(k-1)/M_k`` over ``(j+1) M_j/M_(j+1)`` for ``j <= j_max``.

    The tail sums include :func:`remainder_bound` when it is available. The heuristic verdict
    holds when the log ratios do not trend upwards.

    :param WeightSequence m: The sequence.
    :param int | None j_max: Last j, at most ``K - 2`` (default ``K // 2``).
    :param bool symbolic: Use the exact family rules when available.
    :return StrongNonQuasianalyticity: ``A_hat``, the ratios and the verdict.
    :raises ValidationError: If j_max is out of range.
    """
    truncation = m.truncation
    j_max = truncation // 2 if j_max is None else j_max
    if not 0 <= j_max <= truncation - 2:
        raise ValidationError(
            f'j_max must lie in [0, {truncation - 2}], got {j_max}', tag=WeightSeqErrorTag.INDEX_OUT_OF_RANGE)
    inverse = -m.log_mu[1:]
    suffix = np.logaddexp.accumulate(inverse[::-1])[::-1]
    remainder = remainder_bound(m)
    if math.isfinite(remainder):
        suffix = np.logaddexp(suffix, remainder)
    js = np.arange(j_max + 1)
    log_ratios = suffix[js] - np.log(js + 1.0) + m.log_mu[js + 1]
    a_hat = float(np.exp(np.max(log_ratios)))

    growth = _exact(m, symbolic)
    if growth is not None:
        holds = growth.top_power > 1.0 or growth.factorial > 1.0 + _EXACT_TOL
        return StrongNonQuasianalyticity(
            a_hat, frozen_array(log_ratios), Verdict.HOLDS if holds else Verdict.FAILS, True, '')
    if not math.isfinite(remainder):
        return StrongNonQuasianalyticity(
            a_hat, frozen_array(log_ratios), Verdict.INCONCLUSIVE, False,
            'no tail bound: mu_k grows too slowly over the table')
    trend = tail_trend(log_ratios)
    if trend.trend is Trend.RISING:
        verdict = Verdict.FAILS
    elif trend.trend is Trend.MIXED:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.HOLDS
    return StrongNonQuasianalyticity(a_hat, frozen_array(log_ratios), verdict, False, '')


def derivation_closed(m: WeightSequence, *, symbolic: bool = True) -> PredicateResult:
    """Whether ``sup_k mu_k^(1/k)`` is finite: ``log mu_k / k`` must not trend upwards."""
    growth = _exact(m, symbolic)
    if growth is not None:
        return PredicateResult(Verdict.FAILS if growth.top_power > 2.0 + _EXACT_TOL else Verdict.HOLDS, None, True)
    ks = np.arange(1, m.truncation + 1, dtype=float)
    trend = tail_trend(m.log_mu[1:] / ks, start=1)
    match trend.trend:
        case Trend.RISING:
            verdict = Verdict.FAILS
        case Trend.MIXED:
            verdict = Verdict.INCONCLUSIVE
        case _:
            verdict = Verdict.HOLDS
    return PredicateResult(verdict, trend, False)


def analytic_inclusion(m: WeightSequence, *, symbolic: bool = True) -> PredicateResult:
    """Whether ``(M_k / k!)^(1/k) -> inf``: ``(log M_k - log k!)/k`` must trend upwards."""
    growth = _exact(m, symbolic)
    if growth is not None:
        holds = (growth.top_power > 1.0 or growth.factorial > 1.0 + _EXACT_TOL
                 or (_is_one(growth.factorial) and growth.loglog > _EXACT_TOL))
        return PredicateResult(Verdict.HOLDS if holds else Verdict.FAILS, None, True)
    ks = np.arange(1, m.truncation + 1, dtype=float)
    trend = tail_trend((m.log_m[1:] - gammaln(ks + 1.0)) / ks, start=1)
    match trend.trend:
        case Trend.RISING:
            verdict = Verdict.HOLDS
        case Trend.MIXED:
            verdict = Verdict.INCONCLUSIVE
        case _:
            verdict = Verdict.FAILS
    return PredicateResult(verdict, trend, False)


def classify(m: WeightSequence, *, symbolic: bool = True) -> Classification:
    """Run every classification predicate on m."""
    try:
        gamma: Optional[GammaEstimate] = gamma_index(m, symbolic=symbolic)
    except ValidationError as err:
        log.debug("classify: no gamma estimate for %s: %s", m, err)
        gamma = None
    return Classification(
        quasianalyticity_sum(m, symbolic=symbolic).verdict,
        strong_nonquasianalyticity(m, symbolic=symbolic).verdict,
        analytic_inclusion(m, symbolic=symbolic).verdict,
        derivation_closed(m, symbolic=symbolic).verdict,
        gamma,
    )
