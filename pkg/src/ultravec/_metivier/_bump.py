"""The cut-off psi and its fitted derivative bounds."""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .. import _validate
from .._constants import BUMP_DRIFT_TOL, BUMP_MAX_ORDER, BUMP_SAMPLE_RADII, MAX_JET_ORDER
from .._exceptions import ArgumentTypeError, ValidationError
from .._immutable import Immutable
from .._log import log
from .._numerics import BumpProfile, GrowthFit, MultiJets, UnivariateJets, fit_growth
from .._weightseq import Quasianalyticity, WeightSequence, gamma_index, quasianalyticity_sum
from ._error_tags import MetivierErrorTag

__all__ = ('BumpFunction', 'bump_axis_derivatives', 'bump_derivatives', 'build_bump', 'default_flatness')

_CHUNK = 4096


@dataclass(frozen=True, eq=False)
class BumpFunction(Immutable):
    """A radial cut-off with ``|D^nu psi| <= C0 h0^|nu| L_|nu|`` fitted on a sample grid.

    ``psi = 1`` on ``|y| <= delta`` and ``psi = 0`` on ``|y| >= 2 delta``.
    """
    profile: BumpProfile
    """The radial profile."""
    l_seq: WeightSequence
    """The target sequence L."""
    fit: GrowthFit
    """The fit of the sampled maxima against L."""
    log_c0: float
    """log C0."""
    log_h0: float
    """log h0, raised to ``log(2 C_P)`` when an operator bound is attached."""
    max_order: int
    """Highest fitted derivative order."""
    operator_bound: Optional[float] = None
    """The operator constant C_P the bump was built for."""

    @property
    def delta(self) -> float:
        """Inner radius."""
        return self.profile.delta

    @property
    def flatness(self) -> float:
        """The exponent a."""
        return self.profile.flatness

    @property
    def dimension(self) -> int:
        """Number of variables."""
        return self.profile.dimension

    def __call__(self, points: ArrayLike) -> NDArray:
        """``psi`` at points of shape ``(..., n)``."""
        return self.profile(points)

    def derivatives(self, points: ArrayLike, order: int) -> NDArray:
        """Every ``D^nu psi`` with ``|nu| <= order``; see :func:`bump_derivatives`."""
        return bump_derivatives(self, points, order)


@lru_cache(maxsize=32)
def _algebra(nvars: int, order: int) -> tuple[MultiJets, NDArray]:
    algebra = MultiJets(nvars, order)
    factorials = np.array([math.prod(math.factorial(n) for n in index) for index in algebra.indices], dtype=float)
    return algebra, factorials


def bump_derivatives(bump: BumpFunction | BumpProfile, points: ArrayLike, order: int) -> NDArray:
    """Partial derivatives ``d^nu psi`` at points of shape ``(..., n)`` for ``|nu| <= order``.

    The last axis of the result follows ``multi_indices(n, order)``. Only points in the open band
    ``delta < |y| < 2 delta`` are expanded; the rest get the exact jets of 1 and 0.

    :raises ValidationError: If order exceeds the jet cap or the point dimension differs.
    """
    profile = bump.profile if isinstance(bump, BumpFunction) else bump
    order = _validate.integer_arg(order, 'order', minimum=0, maximum=MAX_JET_ORDER)
    ys = np.asarray(points, dtype=float)
    if ys.ndim == 0 or ys.shape[-1] != profile.dimension:
        raise ValidationError(
            f'points must have last axis {profile.dimension}, got shape {ys.shape}',
            tag=MetivierErrorTag.GRID_DIMENSION)
    algebra, factorials = _algebra(profile.dimension, order)
    flat = ys.reshape(-1, profile.dimension)
    radius = np.linalg.norm(flat, axis=-1)
    out = np.zeros((flat.shape[0], algebra.size))
    out[radius <= profile.delta, 0] = 1.0
    band = np.flatnonzero((radius > profile.delta) & (radius < 2.0 * profile.delta))
    for first in range(0, band.size, _CHUNK):
        rows = band[first:first + _CHUNK]
        variables = [algebra.variable(flat[rows, i], i) for i in range(profile.dimension)]
        with np.errstate(all='ignore'):
            out[rows] = profile.evaluate(algebra, variables) * factorials
    return out.reshape(ys.shape[:-1] + (algebra.size,))


@lru_cache(maxsize=32)
def _univariate(order: int) -> UnivariateJets:
    return UnivariateJets(order)


def bump_axis_derivatives(bump: BumpFunction | BumpProfile, points: ArrayLike, order: int, axis: int) -> NDArray:
    """``d_axis^m psi`` for ``m = 0..order`` at points of shape ``(..., n)``.

    Cheaper than :func:`bump_derivatives` when only one coordinate is differentiated.
    """
    profile = bump.profile if isinstance(bump, BumpFunction) else bump
    order = _validate.integer_arg(order, 'order', minimum=0, maximum=MAX_JET_ORDER)
    ys = np.asarray(points, dtype=float)
    if ys.ndim == 0 or ys.shape[-1] != profile.dimension or not 0 <= axis < profile.dimension:
        raise ValidationError(
            f'points must have last axis {profile.dimension} and axis lie below it, got shape {ys.shape}, axis {axis}',
            tag=MetivierErrorTag.GRID_DIMENSION)
    algebra = _univariate(order)
    flat = ys.reshape(-1, profile.dimension)
    radius = np.linalg.norm(flat, axis=-1)
    out = np.zeros((flat.shape[0], algebra.size))
    out[radius <= profile.delta, 0] = 1.0
    band = np.flatnonzero((radius > profile.delta) & (radius < 2.0 * profile.delta))
    for first in range(0, band.size, _CHUNK):
        rows = band[first:first + _CHUNK]
        variables = [algebra.variable(flat[rows, i]) if i == axis else algebra.constant(flat[rows, i])
                     for i in range(profile.dimension)]
        with np.errstate(all='ignore'):
            out[rows] = algebra.derivatives(profile.evaluate(algebra, variables))
    return out.reshape(ys.shape[:-1] + (algebra.size,))


def _sample_directions(dimension: int) -> NDArray:
    if dimension == 1:
        return np.ones((1, 1))
    if dimension == 2:
        angles = np.linspace(0.0, math.pi / 4.0, 5)
        return np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    eye = np.eye(dimension)
    pair = (eye[0] + eye[1]) / math.sqrt(2.0)
    diagonal = np.ones(dimension) / math.sqrt(dimension)
    return np.concatenate([eye[:1], pair[None], diagonal[None]])


def default_flatness(l_seq: WeightSequence) -> float:
    """``a = 1/(gamma(L) - 1)`` when ``1 < gamma(L) < inf``, else 1."""
    try:
        gamma = gamma_index(l_seq).gamma
    except ValidationError as err:
        log.debug("default_flatness: no gamma estimate for %s (%s)", l_seq, err)
        return 1.0
    if math.isfinite(gamma) and gamma > 1.0:
        return 1.0 / (gamma - 1.0)
    return 1.0


def build_bump(l_seq: WeightSequence,
               delta: float = 1.0,
               flatness: Optional[float] = None,
               *,
               dimension: int = 2,
               max_order: int = BUMP_MAX_ORDER,
               operator_bound: Optional[float] = None) -> BumpFunction:
    """Build the cut-off and fit its derivative bound against L.

    The band ``delta < r < 2 delta`` is sampled at 64 radii (cosine spacing, denser at both
    edges) along a few directions; ``D_m`` is the largest ``|d^nu psi|`` with ``|nu| = m``.

    :param WeightSequence l_seq: The sequence L, non-quasianalytic.
    :param float delta: Inner radius.
    :param float | None flatness: The exponent a; default :func:`default_flatness`.
    :param int dimension: Number of variables n.
    :param int max_order: Highest fitted order.
    :param float | None operator_bound: C_P; when given, ``h0 >= 2 C_P``.
    :return BumpFunction: The cut-off with its fitted (C0, h0).
    :raises ValidationError: If L is quasianalytic, or the fit is not finite and stable (try a
        larger flatness or a larger L).
    """
    if not isinstance(l_seq, WeightSequence):
        raise ArgumentTypeError(
            f'l_seq must be a WeightSequence, got {type(l_seq).__name__}', tag=MetivierErrorTag.BUMP_NOT_OF_CLASS)
    delta = _validate.positive_real_arg(delta, 'delta')
    dimension = _validate.integer_arg(dimension, 'dimension', minimum=1)
    max_order = _validate.integer_arg(max_order, 'max_order', minimum=3, maximum=min(MAX_JET_ORDER, l_seq.truncation))
    if quasianalyticity_sum(l_seq).verdict is Quasianalyticity.QUASIANALYTIC:
        raise ValidationError(f'{l_seq} is quasianalytic and admits no cut-off', tag=MetivierErrorTag.BUMP_NOT_OF_CLASS)
    flatness = default_flatness(l_seq) if flatness is None else _validate.positive_real_arg(flatness, 'flatness')
    if operator_bound is not None:
        operator_bound = _validate.real_arg(operator_bound, 'operator_bound')

    return _fit_bump(l_seq, BumpProfile(delta, flatness, dimension), max_order, operator_bound)


def _fit_bump(l_seq: WeightSequence, profile: BumpProfile, max_order: int,
              operator_bound: Optional[float]) -> BumpFunction:
    delta = profile.delta
    u = np.linspace(0.0, 1.0, BUMP_SAMPLE_RADII + 2)[1:-1]
    radii = delta + delta * (0.5 - 0.5 * np.cos(math.pi * u))
    directions = _sample_directions(profile.dimension)
    points = (radii[:, None, None] * directions[None]).reshape(-1, profile.dimension)
    table = np.abs(bump_derivatives(profile, points, max_order))
    algebra, _ = _algebra(profile.dimension, max_order)
    degrees = np.array([sum(index) for index in algebra.indices])
    finite = np.all(np.isfinite(table), axis=-1)
    if not np.all(finite):
        log.debug("build_bump: dropped %d sample points with non-finite jets", int(np.sum(~finite)))
        table = table[finite]
    log_d = np.full(max_order + 1, -math.inf)
    with np.errstate(divide='ignore'):
        for m in range(max_order + 1):
            peak = float(table[:, degrees == m].max(initial=0.0))
            log_d[m] = math.log(peak) if peak > 0.0 else -math.inf
    log_d[0] = max(log_d[0], 0.0)
    fit = fit_growth(log_d, l_seq.log_m[:max_order + 1])
    if not fit.finite or fit.drift > BUMP_DRIFT_TOL:
        raise ValidationError(
            f'cut-off with flatness {profile.flatness} is not of class {l_seq} up to order {max_order} '
            f'(drift {fit.drift:.3g}); try a larger flatness or a larger L', tag=MetivierErrorTag.BUMP_NOT_OF_CLASS)
    log_h0 = fit.log_h
    if operator_bound is not None and operator_bound > 0.0:
        log_h0 = max(log_h0, math.log(2.0 * operator_bound))
    log.debug("build_bump: a=%s, log C0=%.6g, log h0=%.6g", profile.flatness, fit.log_c, log_h0)
    return BumpFunction(profile, l_seq, fit, fit.log_c, log_h0, max_order, operator_bound)
