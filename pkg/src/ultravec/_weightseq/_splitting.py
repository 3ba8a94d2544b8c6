"""Numerical check of the splitting inequality.

For a weight sequence, ``rho, R >= 1`` and ``j, k, l >= 0``::

    rho^j M_(k+l) R^l <= rho^(j+l) M_k + M_(j+k+l) R^(j+l)

Both sides are evaluated in the log domain, the right one by log-sum-exp.
"""
import math
from itertools import product as cartesian
from typing import NamedTuple, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .. import _validate
from .._constants import DEFAULT_SEED
from .._exceptions import ValidationError
from ._error_tags import WeightSeqErrorTag
from ._sequence import WeightSequence

__all__ = ('SplittingReport', 'SplittingSample', 'check_splitting_lemma', 'exhaustive_splitting_check')

_REL_TOL = 1e-12
_LOG_SCALE_MAX = 5.0


class SplittingSample(NamedTuple):
    """One instance of the splitting inequality."""
    j: int
    k: int
    l: int
    log_rho: float
    log_r: float


class SplittingReport(NamedTuple):
    """Result of a splitting-inequality check."""
    trials: int
    """Number of evaluated instances."""
    max_violation: float
    """Largest ``log LHS - log RHS``; non-positive when the inequality holds everywhere."""
    violations: int
    """Instances whose excess is above the relative tolerance."""
    worst: Optional[SplittingSample]
    """Instance with the largest excess."""


def _evaluate(m: WeightSequence, j: NDArray, k: NDArray, l: NDArray,
              log_rho: NDArray, log_r: NDArray) -> SplittingReport:
    log_m = m.log_m
    lhs = j * log_rho + log_m[k + l] + l * log_r
    rhs = np.logaddexp((j + l) * log_rho + log_m[k], log_m[j + k + l] + (j + l) * log_r)
    excess = lhs - rhs
    worst_index = int(np.argmax(excess))
    violations = int(np.count_nonzero(excess > _REL_TOL * np.maximum(1.0, np.abs(rhs))))
    worst = SplittingSample(int(j[worst_index]), int(k[worst_index]), int(l[worst_index]),
                            float(log_rho[worst_index]), float(log_r[worst_index]))
    return SplittingReport(int(excess.size), float(excess[worst_index]), violations, worst)


def check_splitting_lemma(m: WeightSequence, trials: int = 10_000, seed: int = DEFAULT_SEED) -> SplittingReport:
    """Check the splitting inequality on random instances.

    The total ``j + k + l`` is uniform on ``0..K`` and split by two uniform cuts;
    ``log rho`` and ``log R`` are uniform on ``[0, 5]``.

    :param WeightSequence m: The sequence.
    :param int trials: Number of instances.
    :param int seed: Seed of the generator.
    :return SplittingReport: Largest excess and number of violations.
    :raises ValidationError: If trials is not a positive integer.
    """
    trials = _validate.integer_arg(trials, 'trials', minimum=1)
    rng = np.random.default_rng(seed)
    total = rng.integers(0, m.truncation + 1, size=trials)
    cuts = np.sort(rng.integers(0, total + 1, size=(2, trials)), axis=0)
    j = cuts[0]
    k = cuts[1] - cuts[0]
    l = total - cuts[1]
    log_rho = rng.uniform(0.0, _LOG_SCALE_MAX, size=trials)
    log_r = rng.uniform(0.0, _LOG_SCALE_MAX, size=trials)
    return _evaluate(m, j, k, l, log_rho, log_r)


def exhaustive_splitting_check(m: WeightSequence, bound: int = 12,
                               values: Sequence[float] = (1.0, 2.0, 10.0)) -> SplittingReport:
    """Check the splitting inequality for all ``j, k, l <= bound`` and ``rho, R`` in values.

    Index triples with ``j + k + l > K`` are skipped.

    :raises ValidationError: If bound is negative or a value is below 1.
    """
    bound = _validate.integer_arg(bound, 'bound', minimum=0)
    logs = [math.log(_validate.positive_real_arg(value, 'value')) for value in values]
    if any(value < 0.0 for value in logs):
        raise ValidationError(f'rho and R must be >= 1, got {tuple(values)}', tag=WeightSeqErrorTag.SCALE_BELOW_ONE)
    rows = [(j, k, l, a, b) for j, k, l in cartesian(range(bound + 1), repeat=3) if j + k + l <= m.truncation
            for a, b in cartesian(logs, repeat=2)]
    table = np.array(rows, dtype=float)
    ints = table[:, :3].astype(np.int64)
    return _evaluate(m, ints[:, 0], ints[:, 1], ints[:, 2], table[:, 3], table[:, 4])
