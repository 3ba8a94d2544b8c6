"""Tail-window trend statistics.

A finite table cannot decide a limit. Asymptotic predicates look at the trailing quarter of
the indices, split it into four sub-windows and compare the sub-window extremes: a quantity
"trends to +inf" when the maxima increase strictly with a per-index slope above the
threshold, "to -inf" when the minima decrease strictly, and is bounded when neither extreme
drifts. A window of +inf values trends to +inf.
"""
import math
from enum import Enum
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from .._constants import TAIL_SUBWINDOWS, TAIL_WINDOW_FRACTION, TREND_SLOPE_TOL
from .._doc_utils import enum_docstrings
from .._exceptions import ValidationError
from ._error_tags import NumericsErrorTag

__all__ = ('TailTrend', 'Trend', 'tail_trend')


@enum_docstrings
class Trend(str, Enum):
    """Direction of a sequence over its tail window."""

    RISING = "rising"
    """Sub-window maxima increase strictly with slope above the threshold."""

    FALLING = "falling"
    """Sub-window minima decrease strictly with slope below minus the threshold."""

    BOUNDED = "bounded"
    """Neither extreme drifts beyond the threshold."""

    MIXED = "mixed"
    """None of the above; the window does not decide."""


class TailTrend(NamedTuple):
    """Result of a tail-window trend test."""
    trend: Trend
    """The detected direction."""
    slope: float
    """Per-index slope of the sub-window maxima (minima for a falling trend)."""
    window: tuple[int, int]
    """First and last index of the inspected window."""


def tail_trend(values: ArrayLike,
               *,
               start: int = 0,
               fraction: float = TAIL_WINDOW_FRACTION,
               subwindows: int = TAIL_SUBWINDOWS,
               tol: float = TREND_SLOPE_TOL) -> TailTrend:
    """Classify the tail behaviour of a sequence.

    :param ArrayLike values: The sequence; index ``i`` is reported as ``start + i``.
    :param int start: Index of the first value.
    :param float fraction: Share of trailing values in the window (at least ``subwindows`` values).
    :param int subwindows: Number of sub-windows.
    :param float tol: Slope threshold.
    :return TailTrend: The trend, its slope and the window.
    :raises ValidationError: If there are fewer values than sub-windows or a value is NaN.
    """
    data = np.asarray(values, dtype=float)
    if data.ndim != 1 or data.size < subwindows:
        raise ValidationError(
            f'need at least {subwindows} values, got {data.size}', tag=NumericsErrorTag.INSUFFICIENT_POINTS)
    if np.any(np.isnan(data)):
        raise ValidationError('trend input contains NaN', tag=NumericsErrorTag.NAN_IN_DATA)
    width = max(subwindows, math.ceil(data.size * fraction))
    first = data.size - width
    window = (start + first, start + data.size - 1)
    tail = data[first:]
    if not np.all(np.isfinite(tail)):
        if np.all(tail == np.inf):
            return TailTrend(Trend.RISING, math.inf, window)
        return TailTrend(Trend.MIXED, math.nan, window)

    pieces = np.array_split(np.arange(first, data.size), subwindows)
    centers = np.array([piece.mean() for piece in pieces])
    maxima = np.array([data[piece].max() for piece in pieces])
    minima = np.array([data[piece].min() for piece in pieces])
    span = centers[-1] - centers[0]
    slope_max = (maxima[-1] - maxima[0]) / span
    slope_min = (minima[-1] - minima[0]) / span

    if np.all(np.diff(maxima) > 0) and slope_max > tol:
        return TailTrend(Trend.RISING, float(slope_max), window)
    if np.all(np.diff(minima) < 0) and slope_min < -tol:
        return TailTrend(Trend.FALLING, float(slope_min), window)
    if slope_max <= tol and slope_min >= -tol:
        return TailTrend(Trend.BOUNDED, float(slope_max), window)
    return TailTrend(Trend.MIXED, float(slope_max), window)
