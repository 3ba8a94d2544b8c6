"""Non-elliptic points and the shrinking-ball bound of the symbol."""
import math
from typing import NamedTuple, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import least_squares

from .. import _validate
from .._constants import (
    DEFAULT_SEED,
    ENVELOPE_T_MAX,
    NONELLIPTIC_RESIDUAL_TOL,
    NONELLIPTIC_STARTS,
    NONELLIPTIC_SYMBOL_TOL,
)
from .._exceptions import ValidationError
from .._log import log
from .._numerics import TailTrend, Trend, tail_trend
from .._weightseq import Verdict
from ._error_tags import MetivierErrorTag
from ._operator import DiffOperator

__all__ = (
    'NonEllipticPoint',
    'SymbolBound',
    'ball_offsets',
    'check_symbol_shrinking_bound',
    'find_nonelliptic_point',
    'require_nonelliptic',
)

_T_POINTS = 64


class NonEllipticPoint(NamedTuple):
    """Result of :func:`find_nonelliptic_point`."""
    x0: NDArray
    """The point."""
    xi0: NDArray
    """The unit covector, largest component positive."""
    residual: float
    """``|p_d(x0, xi0)|^2``."""
    found: bool
    """True when the residual is at most the witness tolerance."""
    starts: int
    """Number of local searches run."""


class SymbolBound(NamedTuple):
    """Result of :func:`check_symbol_shrinking_bound`."""
    d_bound: float
    """The fitted D, the largest ``|p(x, t xi0)| t^(eps-d)`` on the grid."""
    maxima: NDArray
    """Per-t maxima."""
    trend: TailTrend
    """Tail statistic of the per-t maxima."""
    verdict: Verdict
    """HOLDS when the maxima show no rising trend."""
    eps: float
    """The exponent epsilon."""
    delta: float
    """Half the ball radius."""
    t_range: tuple[float, float]
    """First and last t of the grid."""
    samples: int
    """Number of x offsets per t."""


def _box_arg(box: tuple[ArrayLike, ArrayLike] | None, dimension: int) -> tuple[NDArray, NDArray]:
    if box is None:
        return -np.ones(dimension), np.ones(dimension)
    try:
        lower, upper = box
        lower = np.asarray(lower, dtype=float).reshape(-1)
        upper = np.asarray(upper, dtype=float).reshape(-1)
    except (TypeError, ValueError) as err:
        raise ValidationError(
            f'box must be a pair of corners, got {box!r}', tag=MetivierErrorTag.INVALID_SEARCH_BOX) from err
    if (lower.size != dimension or upper.size != dimension or not np.all(np.isfinite(lower))
            or not np.all(np.isfinite(upper)) or np.any(lower > upper)):
        raise ValidationError(
            f'box corners must be finite {dimension}-vectors with lower <= upper, got {box!r}',
            tag=MetivierErrorTag.INVALID_SEARCH_BOX)
    return lower, upper


def _canonical(xi: NDArray) -> NDArray:
    unit = xi / np.linalg.norm(xi)
    if unit[int(np.argmax(np.abs(unit)))] < 0.0:
        unit = -unit
    return unit


def find_nonelliptic_point(operator: DiffOperator,
                           box: tuple[ArrayLike, ArrayLike] | None = None,
                           *,
                           starts: int = NONELLIPTIC_STARTS,
                           seed: int = DEFAULT_SEED) -> NonEllipticPoint:
    """Minimise ``|p_d(x, xi)|^2`` over x in a box and xi on the unit sphere.

    The sphere is parametrised by ``xi = w/|w|``; the scaled residual ``p_d(x, w)/|w|^d`` is
    driven to zero by bounded least squares from the box centre paired with every coordinate
    axis, then from ``starts`` random points. Coordinates whose box is a single value stay fixed.

    :param DiffOperator operator: The operator P.
    :param tuple box: ``(lower, upper)`` corners, default ``[-1, 1]^n``.
    :param int starts: Number of random starting points.
    :param int seed: Seed of the starting points.
    :return NonEllipticPoint: The best point found; ``found`` is False when the residual exceeds
        1e-8, which happens for operators elliptic on the box.
    :raises ValidationError: If the box is malformed.
    """
    if not isinstance(operator, DiffOperator):
        raise ValidationError(
            f'operator must be a DiffOperator, got {type(operator).__name__}', tag=MetivierErrorTag.INVALID_OPERATOR)
    starts = _validate.integer_arg(starts, 'starts', minimum=0)
    n = operator.dimension
    order = operator.order
    lower, upper = _box_arg(box, n)
    free = np.flatnonzero(upper > lower)
    fixed_x = (lower + upper) / 2.0

    def unpack(z: NDArray) -> tuple[NDArray, NDArray]:
        x = fixed_x.copy()
        x[free] = z[:free.size]
        return x, z[free.size:]

    def residual(z: NDArray) -> NDArray:
        x, w = unpack(z)
        norm = max(float(np.linalg.norm(w)), 1e-300)
        return np.atleast_1d(operator.principal_symbol(x, w) / norm ** order)

    bounds = (np.concatenate([lower[free], np.full(n, -np.inf)]), np.concatenate([upper[free], np.full(n, np.inf)]))
    rng = np.random.default_rng(seed)
    candidates = [np.concatenate([fixed_x[free], np.eye(n)[i]]) for i in range(n)]
    for _ in range(starts):
        direction = rng.standard_normal(n)
        candidates.append(np.concatenate([rng.uniform(lower[free], upper[free]), direction]))

    best: tuple[float, NDArray, NDArray] | None = None
    for z0 in candidates:
        value = float(residual(z0)[0] ** 2)
        if value > 0.0:
            fit = least_squares(residual, z0, bounds=bounds, ftol=1e-14, xtol=1e-14, gtol=1e-14)
            if np.linalg.norm(fit.x[free.size:]) > 0.0:
                z0 = fit.x
                value = float(residual(z0)[0] ** 2)
        if best is None or value < best[0]:
            x, w = unpack(z0)
            best = (value, x, w)
    assert best is not None
    value, x0, w = best
    point = NonEllipticPoint(x0, _canonical(w), value, value <= NONELLIPTIC_RESIDUAL_TOL, len(candidates))
    log.debug("find_nonelliptic_point: residual %.3g at x0=%s, xi0=%s", value, point.x0, point.xi0)
    return point


def require_nonelliptic(operator: DiffOperator, x0: ArrayLike, xi0: ArrayLike) -> tuple[NDArray, NDArray]:
    """Validate a witness ``p_d(x0, xi0) = 0`` and return the point and unit covector.

    :raises ValidationError: If xi0 is not a unit vector or ``|p_d(x0, xi0)| > 1e-10``.
    """
    point = _validate.vector_arg(x0, 'x0', operator.dimension)
    direction = _validate.unit_vector_arg(xi0, 'xi0', operator.dimension, tol=1e-10)
    value = abs(float(operator.principal_symbol(point, direction)))
    if value > NONELLIPTIC_SYMBOL_TOL:
        raise ValidationError(
            f'p_d(x0, xi0) = {value:.3g} does not vanish', tag=MetivierErrorTag.NOT_NONELLIPTIC)
    return point, direction


def ball_offsets(dimension: int, seed: int = DEFAULT_SEED) -> NDArray:
    """Sample offsets in the closed unit ball, boundary and coordinate axes included.

    A line gets 41 points, a plane a polar grid of 11 radii by 32 angles; higher dimensions get
    the centre, the half and full axes and 64 random directions at radii 1/2 and 1.
    """
    if dimension == 1:
        return np.linspace(-1.0, 1.0, 41)[:, None]
    if dimension == 2:
        radii = np.linspace(0.0, 1.0, 11)[1:]
        angles = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
        ring = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        return np.concatenate([np.zeros((1, 2)), (radii[:, None, None] * ring[None]).reshape(-1, 2)])
    axes = np.concatenate([np.eye(dimension), -np.eye(dimension)])
    random = np.random.default_rng(seed).standard_normal((64, dimension))
    random /= np.linalg.norm(random, axis=-1, keepdims=True)
    return np.concatenate([np.zeros((1, dimension)), axes, 0.5 * axes, random, 0.5 * random])


def check_symbol_shrinking_bound(operator: DiffOperator,
                                 x0: ArrayLike,
                                 xi0: ArrayLike,
                                 eps: float,
                                 t_grid: Sequence[float] | NDArray | None = None,
                                 *,
                                 delta: float = 1.0,
                                 seed: int = DEFAULT_SEED) -> SymbolBound:
    """Fit D in ``|p(x, t xi0)| <= D t^(d-eps)`` for ``|x - x0| <= 2 delta t^(-eps)``.

    :param DiffOperator operator: The operator P.
    :param ArrayLike x0: The non-elliptic point.
    :param ArrayLike xi0: The unit covector with ``p_d(x0, xi0) = 0``.
    :param float eps: The exponent, in (0, 1).
    :param t_grid: Values ``t >= 1``; default 64 geometric points on ``[1, 1e4]``.
    :param float delta: Half the radius of the base ball.
    :param int seed: Seed of the offsets in dimension 3 and up.
    :return SymbolBound: The fitted D and the tail verdict on the per-t maxima.
    :raises ValidationError: If ``p_d(x0, xi0)`` does not vanish.
    """
    point, direction = require_nonelliptic(operator, x0, xi0)
    eps = _validate.unit_interval_arg(eps, 'eps')
    delta = _validate.positive_real_arg(delta, 'delta')
    if t_grid is None:
        ts = np.geomspace(1.0, ENVELOPE_T_MAX, _T_POINTS)
    else:
        ts = np.asarray(t_grid, dtype=float).reshape(-1)
        if ts.size == 0 or not np.all(np.isfinite(ts)) or np.any(ts < 1.0):
            raise ValidationError('t_grid must hold finite values t >= 1', tag=MetivierErrorTag.INVALID_T_GRID)
    offsets = ball_offsets(operator.dimension, seed)
    radius = 2.0 * delta * ts ** -eps
    xs = point + radius[:, None, None] * offsets[None]
    values = np.abs(operator.symbol(xs, ts[:, None, None] * direction))
    maxima = values.max(axis=-1) * ts ** (eps - operator.order)
    trend = tail_trend(maxima) if maxima.size >= 4 else TailTrend(Trend.BOUNDED, 0.0, (0, maxima.size - 1))
    match trend.trend:
        case Trend.RISING:
            verdict = Verdict.FAILS
        case Trend.MIXED:
            verdict = Verdict.INCONCLUSIVE
        case _:
            verdict = Verdict.HOLDS
    log.debug("check_symbol_shrinking_bound: D=%.6g, trend %s", float(maxima.max()), trend.trend)
    return SymbolBound(float(maxima.max()), maxima, trend, verdict, eps, delta, (float(ts[0]), float(ts[-1])),
                       offsets.shape[0])
