"""Integrators for piecewise-power profiles and oscillatory integrals.

A weight sequence ``M`` determines the profile ``Phi(t) = N_j t^(-j)`` on the cell
``[mu_j, mu_(j+1))`` (with ``mu_0 = 0`` and ``mu_(K+1) = inf``), so integrals of
``t^p Phi(t)`` have closed forms per cell. They are summed in the log domain.
"""
import math
from typing import Any, Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import logsumexp

from .._constants import GAUSS_LEGENDRE_NODES, OSCILLATORY_DECAY_TOL, QUADRATURE_NODE_BUDGET
from .._exceptions import BudgetExceeded, TailDivergent, ValidationError
from ._error_tags import NumericsErrorTag
from ._logvalue import LogValue

__all__ = (
    'integrate_oscillatory',
    'integrate_piecewise_power',
    'oscillatory_nodes',
    'piecewise_power_cells',
    'piecewise_power_tail',
    'power_integral_cap',
)

_ZERO_CELL_LEVELS = 20
"""A cell starting at 0 is split geometrically down to ``b * 2**-20``."""


def _log_m_of(seq: Any) -> NDArray:
    log_m = getattr(seq, 'log_m', seq)
    return np.asarray(log_m, dtype=float)


def _log_cell_integral(log_a: NDArray, log_b: NDArray, q: NDArray) -> NDArray:
    """``log of int_a^b t^(q-1) dt`` for ``a < b``; ``log_a`` may be ``-inf`` when ``q > 0``."""
    out = np.empty_like(q)
    flat = q == 0.0
    with np.errstate(invalid='ignore', divide='ignore'):
        out[flat] = np.log(log_b[flat] - log_a[flat])
        qa = q[~flat] * log_a[~flat]
        qb = q[~flat] * log_b[~flat]
        hi = np.maximum(qa, qb)
        lo = np.minimum(qa, qb)
        out[~flat] = hi + np.log(-np.expm1(lo - hi)) - np.log(np.abs(q[~flat]))
    return out


def piecewise_power_cells(seq: Any, power: float, lower: float = 0.0) -> NDArray:
    """Log contributions of every cell to ``int_lower^inf t^power Phi(t) dt``.

    :param Any seq: A weight sequence or its ``log M_0..log M_K`` table.
    :param float power: The power ``p`` (greater than -1 when ``lower`` is 0).
    :param float lower: The lower limit.
    :return NDArray: ``K + 1`` log values, ``-inf`` for empty cells; the last entry is the tail
        beyond ``max(mu_K, lower)``.
    :raises TailDivergent: If the last cell diverges, that is ``K <= power + 1``.
    :raises ValidationError: If lower is negative or power too small.
    """
    log_m = _log_m_of(seq)
    power = float(power)
    lower = float(lower)
    if lower < 0.0:
        raise ValidationError(
            f'lower limit must be non-negative, got {lower}', tag=NumericsErrorTag.NEGATIVE_LOWER_LIMIT)
    if lower == 0.0 and power <= -1.0:
        raise ValidationError(f'power must exceed -1, got {power}', tag=NumericsErrorTag.POWER_TOO_SMALL)
    truncation = log_m.size - 1
    q = power - np.arange(truncation + 1, dtype=float) + 1.0
    if q[-1] >= 0.0:
        raise TailDivergent(
            f'truncation K={truncation} is too short for power {power}', tag=NumericsErrorTag.TAIL_DIVERGENT)
    log_mu = np.diff(log_m)
    left = np.concatenate(([-math.inf], log_mu))
    right = np.concatenate((log_mu, [math.inf]))
    if lower > 0.0:
        left = np.maximum(left, math.log(lower))

    cells = np.full(truncation + 1, -math.inf)
    body = np.flatnonzero(right[:-1] > left[:-1])
    if body.size:
        cells[body] = _log_cell_integral(left[body], right[body], q[body])
    # last cell: N_K int_a^inf t^(q-1) dt = N_K a^q / (-q)
    cells[-1] = q[-1] * left[-1] - math.log(-q[-1])
    return cells + log_m


def integrate_piecewise_power(seq: Any, power: float, lower: float = 0.0) -> LogValue:
    """``int_lower^inf t^power Phi(t) dt`` in closed form, as a LogValue.

    The remainder beyond ``mu_K`` is the exact integral of ``N_K t^(power-K)`` and is always
    included.
    """
    return LogValue.from_log(float(logsumexp(piecewise_power_cells(seq, power, lower))))


def piecewise_power_tail(seq: Any, power: float, lower: float = 0.0) -> float:
    """Log of the part of ``int_lower^inf t^power Phi(t) dt`` beyond the last breakpoint."""
    return float(piecewise_power_cells(seq, power, lower)[-1])


def power_integral_cap(seq: Any, power: float, rel_tol: float, lower: float = 0.0) -> float:
    """A cut-off T with ``int_T^inf t^power Phi <= rel_tol * int_lower^inf t^power Phi``.

    T is a breakpoint unless the tail cell alone exceeds the tolerance, in which case it is
    solved for inside the tail cell.
    """
    log_m = _log_m_of(seq)
    cells = piecewise_power_cells(log_m, power, lower)
    threshold = float(logsumexp(cells)) + math.log(rel_tol)
    truncation = log_m.size - 1
    if cells[-1] > threshold:
        q = power - truncation + 1.0
        return math.exp((threshold + math.log(-q) - log_m[-1]) / q)
    suffix = np.logaddexp.accumulate(cells[::-1])[::-1]
    j = int(np.flatnonzero(suffix <= threshold)[0])
    log_mu = np.diff(log_m)
    cap = math.exp(log_mu[j - 1]) if j > 0 else lower
    return max(cap, lower)


def _refine_cell(a: float, b: float) -> NDArray:
    if a == 0.0:
        return np.concatenate(([0.0], b * 2.0 ** -np.arange(_ZERO_CELL_LEVELS, -1, -1, dtype=float)))
    pieces = max(1, math.ceil(math.log2(b / a)))
    return a * (b / a) ** (np.arange(pieces + 1) / pieces)


def oscillatory_nodes(frequency: float,
                      breakpoints: ArrayLike,
                      nodes: int = GAUSS_LEGENDRE_NODES) -> tuple[NDArray, NDArray]:
    """Gauss-Legendre nodes and weights for ``int f(t) e^(i*frequency*t) dt``.

    Consecutive breakpoints bound the cells. Cells are split so that each ratio is at most 2
    (cells starting at 0 geometrically down to ``b*2^-20``) and no piece is longer than a
    quarter period.

    :param float frequency: The angular frequency.
    :param ArrayLike breakpoints: Non-negative breakpoints; the first and last are the limits.
    :param int nodes: Nodes per piece.
    :return tuple[NDArray, NDArray]: Nodes and weights, sorted by node.
    :raises ValidationError: If the breakpoints are invalid.
    :raises BudgetExceeded: If more than the node budget would be needed.
    """
    points = np.unique(np.asarray(breakpoints, dtype=float))
    if points.size < 2 or not np.all(np.isfinite(points)) or points[0] < 0.0:
        raise ValidationError(
            'breakpoints must be finite, non-negative and contain two distinct values',
            tag=NumericsErrorTag.INVALID_BREAKPOINTS)
    edges = np.unique(np.concatenate([_refine_cell(a, b) for a, b in zip(points[:-1], points[1:])]))
    lengths = np.diff(edges)
    if frequency != 0.0:
        quarter = math.pi / (2.0 * abs(frequency))
        counts = np.maximum(1, np.ceil(lengths / quarter)).astype(np.int64)
    else:
        counts = np.ones(lengths.size, dtype=np.int64)
    total = int(counts.sum()) * nodes
    if total > QUADRATURE_NODE_BUDGET:
        raise BudgetExceeded(
            f'oscillatory rule needs {total} nodes', tag=NumericsErrorTag.QUADRATURE_BUDGET,
            budget=QUADRATURE_NODE_BUDGET)
    segment = np.repeat(np.arange(counts.size), counts)
    local = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    step = lengths[segment] / counts[segment]
    starts = edges[:-1][segment] + local * step
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = (starts[:, None] + 0.5 * step[:, None] * (x + 1.0)).ravel()
    weights = (0.5 * step[:, None] * w).ravel()
    return t, weights


def integrate_oscillatory(profile: Callable[[NDArray], NDArray],
                          frequency: float,
                          breakpoints: ArrayLike,
                          *,
                          nodes: int = GAUSS_LEGENDRE_NODES,
                          log_scale: float = 0.0,
                          decay_tol: float = OSCILLATORY_DECAY_TOL) -> tuple[LogValue, LogValue]:
    """``int f(t) e^(i*frequency*t) dt`` over the breakpoint range.

    :param Callable profile: Vectorized ``f``; may return complex values. Values are read as
        ``f(t) * e^(-log_scale)``.
    :param float frequency: The angular frequency.
    :param ArrayLike breakpoints: Cell boundaries; should include every kink of ``f``.
    :param int nodes: Gauss-Legendre nodes per piece.
    :param float log_scale: Log of a factor taken out of the profile values.
    :param float decay_tol: Largest allowed ``t_end * |f(t_end)|`` relative to the envelope.
    :return tuple[LogValue, LogValue]: Real and imaginary part.
    :raises TailDivergent: If the profile has not decayed at the upper limit.
    """
    t, weights = oscillatory_nodes(frequency, breakpoints, nodes)
    values = np.asarray(profile(t))
    envelope = float(np.sum(weights * np.abs(values)))
    if envelope == 0.0:
        return LogValue.zero(), LogValue.zero()
    end = float(np.max(np.asarray(breakpoints, dtype=float)))
    end_value = abs(complex(np.asarray(profile(np.array([end])))[0]))
    if end * end_value > decay_tol * envelope:
        raise TailDivergent(
            f'profile has not decayed at t={end:g}', tag=NumericsErrorTag.NON_DECAYING_PROFILE)
    total = complex(np.sum(weights * values * np.exp(1j * frequency * t)))
    real = LogValue.from_float(total.real)
    imag = LogValue.from_float(total.imag)
    scale = LogValue.from_log(log_scale)
    return real * scale, imag * scale
