"""Moment tables, the two-sided moment sandwich and the scale covariance of moments."""
import csv
import math
from typing import NamedTuple, Optional, TextIO

import numpy as np

from .. import _validate
from .._constants import SANDWICH_MAX_ORDER, SCALING_REL_TOL
from .._exceptions import ValidationError
from .._log import log
from .._numerics import GrowthFit, TailTrend, Trend, fit_geometric_lower, fit_geometric_upper, tail_trend
from .._weightseq import Verdict, derivation_closed, gamma_index, rescale
from ._flat import FlatKernel, moment, moment_tail

__all__ = (
    'MOMENT_CSV_COLUMNS',
    'MomentRow',
    'MomentSandwich',
    'ScaleCovariance',
    'moment_rows',
    'scale_covariance_check',
    'verify_moment_sandwich',
    'write_moments_csv',
)

MOMENT_CSV_COLUMNS: tuple[str, ...] = ('k', 'logI_k', 'logN_k', 'logI_k-logN_k', 'tailRemainder')
"""Header of the moment CSV."""


class MomentRow(NamedTuple):
    """One line of a moment table (natural logs throughout)."""
    k: int
    """Moment order."""
    log_i: float
    """``log I_k``."""
    log_n: float
    """``log N_k``."""
    log_ratio: float
    """``log I_k - log N_k``."""
    log_tail: float
    """Log of the remainder beyond ``mu_K`` included in ``I_k``."""


class MomentSandwich(NamedTuple):
    """Result of :func:`verify_moment_sandwich`."""
    lower: GrowthFit
    """Largest ``log Q_1`` with ``Q_1^(k+1) N_k <= I_k``."""
    upper: GrowthFit
    """Smallest ``log Q_2`` with ``I_k <= Q_2^(k+1) N_k`` on the table."""
    upper_trend: TailTrend
    """Tail statistic of ``(log I_k - log N_k)/(k+1)``; rising means no finite ``Q_2``."""
    verdict: Verdict
    """Both constants exist on the table."""
    derivation_closed: Verdict
    """Whether N is derivation closed, the hypothesis of the upper estimate."""
    consistent: bool
    """False only when the upper estimate diverges although N is derivation closed."""
    gamma: Optional[float]
    """``gamma(N)`` when it can be estimated, recorded because the constructions need it positive."""
    kmax: int
    """Largest moment order used."""


class ScaleCovariance(NamedTuple):
    """Result of :func:`scale_covariance_check`."""
    log_b: float
    """Log of the scale b."""
    max_discrepancy: float
    """Largest ``|log I'_k - log I_k - (k+1) log b|`` relative to ``max(1, |log I'_k|)``."""
    holds: bool
    """The discrepancy is within ``1e-10``."""
    kmax: int
    """Largest moment order compared."""


def moment_rows(kernel: FlatKernel, kmax: int, lower: float = 0.0) -> list[MomentRow]:
    """Moments ``k = 0..kmax`` of the kernel.

    :raises TailDivergent: If a moment cannot be certified.
    """
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=0)
    log_m = kernel.seq.log_m
    rows = []
    for k in range(kmax + 1):
        log_i = moment(kernel, k, lower).log_abs
        rows.append(MomentRow(k, log_i, float(log_m[k]), log_i - float(log_m[k]), moment_tail(kernel, k, lower)))
    return rows


def write_moments_csv(rows: list[MomentRow], stream: TextIO) -> None:
    """Write a moment table with the columns of :data:`MOMENT_CSV_COLUMNS`."""
    writer = csv.writer(stream)
    writer.writerow(MOMENT_CSV_COLUMNS)
    for row in rows:
        writer.writerow([row.k, repr(row.log_i), repr(row.log_n), repr(row.log_ratio), repr(row.log_tail)])


def verify_moment_sandwich(kernel: FlatKernel, kmax: int = 30) -> MomentSandwich:
    """Fit ``Q_1^(k+1) N_k <= I_k <= Q_2^(k+1) N_k`` for ``k <= kmax``.

    Both fits are one-parameter and exact on the table. Whether ``Q_2`` stays bounded is decided
    by the tail trend of ``(log I_k - log N_k)/(k+1)``: for sequences that are not derivation
    closed it rises, which is the expected behaviour and is reported as consistent.

    :param FlatKernel kernel: The kernel.
    :param int kmax: Largest order, between 3 and 40.
    :return MomentSandwich: The fits and verdicts.
    :raises TailDivergent: If a moment cannot be certified.
    """
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=3, maximum=SANDWICH_MAX_ORDER)
    rows = moment_rows(kernel, kmax)
    log_i = np.array([row.log_i for row in rows])
    log_n = np.array([row.log_n for row in rows])
    lower = fit_geometric_lower(log_i, log_n)
    upper = fit_geometric_upper(log_i, log_n)
    trend = tail_trend((log_i - log_n) / np.arange(1.0, kmax + 2.0))

    closed = derivation_closed(kernel.seq).verdict
    if closed is Verdict.INCONCLUSIVE:
        log.warning("verify_moment_sandwich: derivation closedness of %s is inconclusive", kernel.seq)
    try:
        gamma: Optional[float] = gamma_index(kernel.seq).gamma
    except ValidationError as err:
        log.debug("verify_moment_sandwich: no gamma estimate for %s: %s", kernel.seq, err)
        gamma = None

    match trend.trend:
        case Trend.RISING:
            upper_verdict = Verdict.FAILS
        case Trend.MIXED:
            upper_verdict = Verdict.INCONCLUSIVE
        case _:
            upper_verdict = Verdict.HOLDS
    if not lower.finite:
        verdict = Verdict.FAILS
    else:
        verdict = upper_verdict
    consistent = not (upper_verdict is Verdict.FAILS and closed is Verdict.HOLDS)
    log.debug("verify_moment_sandwich: log Q1=%s, log Q2=%s, trend %s", lower.log_c, upper.log_c, trend.trend.value)
    return MomentSandwich(lower, upper, trend, verdict, closed, consistent, gamma, kmax)


def scale_covariance_check(kernel: FlatKernel, log_b: float, kmax: int = 20) -> ScaleCovariance:
    """Compare the moments of ``b^k N_k`` with ``b^(k+1) I_k``.

    :raises ValidationError: If the rescaled sequence has ``M_1 < 1``.
    """
    log_b = _validate.real_arg(log_b, 'log_b')
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=0)
    scaled = FlatKernel(rescale(kernel.seq, log_b))
    worst = 0.0
    for k in range(kmax + 1):
        base = moment(kernel, k).log_abs
        moved = moment(scaled, k).log_abs
        worst = max(worst, abs(moved - base - (k + 1) * log_b) / max(1.0, abs(moved)))
    return ScaleCovariance(log_b, worst, worst <= SCALING_REL_TOL and math.isfinite(worst), kmax)
