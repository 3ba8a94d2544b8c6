"""Estimate of the growth index gamma(M).

``gamma(M)`` is the supremum of the gamma for which ``mu_k / k^gamma`` is almost increasing,
i.e. ``mu_j / j^gamma <= C mu_k / k^gamma`` for ``j <= k``. With ``b_k = log mu_k - gamma log k``
the smallest such C is the supremum of the drawdown ``max_(j<=k) b_j - b_k``. On a finite
table a candidate gamma is feasible when the drawdown no longer grows over the last quarter
of the indices.
"""
import math
from typing import NamedTuple

import numpy as np

from .._constants import GAMMA_MAX, GAMMA_MIN_TRUNCATION, GAMMA_SLACK, GAMMA_TOL
from .._exceptions import ValidationError
from .._log import log
from ._error_tags import WeightSeqErrorTag
from ._family import exact_terms
from ._sequence import WeightSequence

__all__ = ('GammaEstimate', 'gamma_index')


class GammaEstimate(NamedTuple):
    """An estimate of gamma(M)."""
    gamma: float
    """The estimate; ``inf`` when the index exceeds the search bracket."""
    lower: float
    """Largest gamma found feasible."""
    upper: float
    """Smallest gamma found infeasible (``inf`` if none)."""
    infinite: bool
    """True when gamma is infinite (exactly) or feasible at the bracket's end."""
    symbolic: bool
    """True when the value comes from the exact family rules."""


def _feasible(log_mu: np.ndarray, gamma: float) -> bool:
    truncation = log_mu.size - 1
    b = log_mu[1:] - gamma * np.log(np.arange(1, truncation + 1, dtype=float))
    drawdown = np.maximum.accumulate(b) - b
    split = (3 * truncation) // 4
    return float(drawdown[split:].max() - drawdown[:split].max()) <= GAMMA_SLACK


def gamma_index(m: WeightSequence, gamma_max: float = GAMMA_MAX, tol: float = GAMMA_TOL, *,
                symbolic: bool = True) -> GammaEstimate:
    """Estimate gamma(M) by bisection on the almost-increasing test.

    :param WeightSequence m: The sequence.
    :param float gamma_max: Upper end of the bracket; feasibility there means gamma = inf.
    :param float tol: Width of the final bracket.
    :param bool symbolic: Use the exact family value when available.
    :return GammaEstimate: The estimate with its bracket.
    :raises ValidationError: If K < 256 or tol < 1/K on the estimator path.
    """
    terms = exact_terms(m.family) if symbolic else None
    if terms is not None:
        if any(isinstance(key, tuple) and value > 0 for key, value in terms.items()):
            return GammaEstimate(math.inf, gamma_max, math.inf, True, True)
        s = terms.get('logfact', 0.0)
        return GammaEstimate(s, s, s, False, True)

    truncation = m.truncation
    if truncation < GAMMA_MIN_TRUNCATION:
        raise ValidationError(
            f'gamma estimation needs K >= {GAMMA_MIN_TRUNCATION}, got {truncation}',
            tag=WeightSeqErrorTag.TRUNCATION_TOO_SMALL)
    if tol * truncation < 1.0:
        raise ValidationError(
            f'tolerance {tol} is finer than K={truncation} resolves', tag=WeightSeqErrorTag.TOLERANCE_TOO_FINE)
    log_mu = m.log_mu
    if _feasible(log_mu, gamma_max):
        return GammaEstimate(math.inf, gamma_max, math.inf, True, False)
    lower, upper = 0.0, float(gamma_max)
    while upper - lower > tol:
        middle = 0.5 * (lower + upper)
        if _feasible(log_mu, middle):
            lower = middle
        else:
            upper = middle
    log.debug("gamma_index: bracket [%s, %s] for %s", lower, upper, m)
    return GammaEstimate(0.5 * (lower + upper), lower, upper, False, False)
