"""Log-domain growth fits ``data_k <= C h^k reference_k``.

The fits are exact in the log domain: ``log_c`` is recomputed from the fitted slope so that
every residual ``(r_k - k*log_h) - log_c`` is at most zero and the binding index has
residual exactly zero.
"""
import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .._constants import GROWTH_DRIFT_TOL
from .._exceptions import ValidationError
from ._error_tags import NumericsErrorTag

__all__ = (
    'GrowthFit',
    'check_growth',
    'fit_geometric_lower',
    'fit_geometric_upper',
    'fit_growth',
)

_MIN_POINTS = 4


class GrowthFit(NamedTuple):
    """A fitted bound ``log data_k <= log_c + k*log_h + log reference_k``."""
    log_c: float
    """Log of the constant C."""
    log_h: float
    """Log of the geometric factor h."""
    max_residual: float
    """Largest residual after the fit; never positive for an exact fit."""
    k_range: tuple[int, int]
    """First and last index used."""
    drift: float
    """Change of log_h between the half-prefix fit and the full fit."""

    @property
    def finite(self) -> bool:
        """True when both fitted constants are finite."""
        return math.isfinite(self.log_c) and math.isfinite(self.log_h)

    def stable(self, tol: float = GROWTH_DRIFT_TOL) -> bool:
        """True when the fit is finite and its drift is within tol."""
        return self.finite and abs(self.drift) <= tol


def _residual_log(data: ArrayLike, reference: ArrayLike) -> NDArray:
    data_arr = np.asarray(data, dtype=float)
    ref_arr = np.asarray(reference, dtype=float)
    if data_arr.shape != ref_arr.shape or data_arr.ndim != 1:
        raise ValidationError(
            f'data and reference must be 1-D of equal length, got {data_arr.shape} and {ref_arr.shape}',
            tag=NumericsErrorTag.LENGTH_MISMATCH)
    if data_arr.size < _MIN_POINTS:
        raise ValidationError(
            f'need at least {_MIN_POINTS} points, got {data_arr.size}', tag=NumericsErrorTag.INSUFFICIENT_POINTS)
    with np.errstate(invalid='ignore'):
        residual = data_arr - ref_arr
    if np.any(np.isnan(residual)):
        raise ValidationError('growth data contains NaN', tag=NumericsErrorTag.NAN_IN_DATA)
    return residual


def _last_edge_slope(ks: NDArray, rs: NDArray) -> float:
    """Slope of the last edge of the upper convex hull of points sorted by k."""
    hull: list[tuple[float, float]] = []
    for point in zip(ks.tolist(), rs.tolist()):
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            if (bx - ax) * (point[1] - ay) - (by - ay) * (point[0] - ax) >= 0:
                hull.pop()
            else:
                break
        hull.append(point)
    if len(hull) < 2:
        return 0.0
    (k0, r0), (k1, r1) = hull[-2], hull[-1]
    return (r1 - r0) / (k1 - k0)


def _edge_fit(ks: NDArray, rs: NDArray) -> tuple[float, float]:
    finite = np.isfinite(rs)
    if not np.any(finite):
        return -math.inf, 0.0
    log_h = _last_edge_slope(ks[finite], rs[finite])
    log_c = float(np.max((rs[finite] - ks[finite] * log_h)))
    return log_c, log_h


def fit_growth(data: ArrayLike, reference: ArrayLike, *, start: int = 0) -> GrowthFit:
    """Fit the tightest exact bound ``data_k <= C h^k reference_k``, all in logs.

    ``log_h`` is the slope of the last upper-hull edge of ``r_k = data_k - reference_k``,
    the supporting line that is lowest just inside the last index. ``log_c`` then makes
    the line touch the data. Points with ``r_k = -inf`` do not constrain the fit; an
    infinite ``r_k`` makes the fit infinite.

    :param ArrayLike data: Log data values, index ``start + i``.
    :param ArrayLike reference: Log reference values of the same length.
    :param int start: Index of the first entry.
    :return GrowthFit: The fitted constants, residual, index range and drift.
    :raises ValidationError: On mismatched lengths, fewer than four points or NaN.
    """
    rs = _residual_log(data, reference)
    ks = np.arange(start, start + rs.size, dtype=float)
    k_range = (start, start + rs.size - 1)
    if np.any(rs == np.inf):
        return GrowthFit(math.inf, math.inf, 0.0, k_range, 0.0)
    log_c, log_h = _edge_fit(ks, rs)
    if log_c == -math.inf:
        return GrowthFit(log_c, log_h, 0.0, k_range, 0.0)
    half = max(2, math.ceil(rs.size / 2))
    _, prefix_h = _edge_fit(ks[:half], rs[:half])
    return GrowthFit(log_c, log_h, check_growth(rs, 0.0, log_c, log_h, start=start), k_range, log_h - prefix_h)


def check_growth(data: ArrayLike, reference: ArrayLike | float, log_c: float, log_h: float, *, start: int = 0) -> float:
    """Largest residual ``(data_k - reference_k - k*log_h) - log_c`` over finite points.

    :return float: The residual; ``-inf`` when no point is finite.
    """
    rs = np.asarray(data, dtype=float) - np.asarray(reference, dtype=float)
    ks = np.arange(start, start + rs.size, dtype=float)
    finite = np.isfinite(rs)
    if not np.any(finite):
        return -math.inf
    return float(np.max((rs[finite] - ks[finite] * log_h) - log_c))


def _geometric_fit(data: ArrayLike, reference: ArrayLike, start: int, upper: bool) -> GrowthFit:
    rs = _residual_log(data, reference)
    ks = np.arange(start, start + rs.size, dtype=float)
    k_range = (start, start + rs.size - 1)
    finite = np.isfinite(rs)
    if (upper and np.any(rs == np.inf)) or (not upper and np.any(rs == -np.inf)):
        bad = math.inf if upper else -math.inf
        return GrowthFit(bad, bad, 0.0, k_range, 0.0)
    if not np.any(finite):
        return GrowthFit(-math.inf, -math.inf, 0.0, k_range, 0.0)
    ratios = rs[finite] / (ks[finite] + 1.0)
    sign = 1.0 if upper else -1.0

    def residual(log_q: float) -> float:
        return float(np.max(sign * (rs[finite] - (ks[finite] + 1.0) * log_q)))

    log_q = float(np.max(ratios) if upper else np.min(ratios))
    while residual(log_q) > 0.0:
        log_q = float(np.nextafter(log_q, sign * math.inf))
    half = max(2, math.ceil(rs.size / 2))
    head = rs[:half][np.isfinite(rs[:half])] / (ks[:half][np.isfinite(rs[:half])] + 1.0)
    prefix_q = float(np.max(head) if upper else np.min(head)) if head.size else log_q
    return GrowthFit(log_q, log_q, residual(log_q), k_range, log_q - prefix_q)


def fit_geometric_upper(data: ArrayLike, reference: ArrayLike, *, start: int = 0) -> GrowthFit:
    """Fit ``data_k <= Q^(k+1) reference_k`` with the smallest Q.

    ``log_c`` and ``log_h`` both hold ``log Q``.
    """
    return _geometric_fit(data, reference, start, upper=True)


def fit_geometric_lower(data: ArrayLike, reference: ArrayLike, *, start: int = 0) -> GrowthFit:
    """Fit ``data_k >= Q^(k+1) reference_k`` with the largest Q.

    ``max_residual`` is the largest ``(k+1) log Q - r_k``, never positive.
    """
    return _geometric_fit(data, reference, start, upper=False)
