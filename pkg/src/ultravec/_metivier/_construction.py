"""The function u and its iterates ``P^k u`` evaluated by oscillatory quadrature in t.

For fixed x the integrand ``Q_k(x, t) Phi_N(t) e^(i t xi0 . (x - x0))`` is a finite sum of powers of t
times cut-off derivatives, cut to ``[1, T]``. T starts at the kernel cap and grows by a factor of 4 while the
integrand has not decayed there, up to the first of the exact domain ``mu_K`` of the kernel and the end
``(2 delta / |x - x0|)^(1/eps)`` of the cut-off support. The breakpoints hold every kernel kink and a
geometric subdivision of the transition band of the cut-off.
"""
import math
from enum import Enum
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import trapezoid

from .. import _validate
from .._constants import BAND_CELLS, CAP_EXTENSION_FACTOR, MAX_ITERATE_ORDER, PATCH_POINTS, SEGMENT_POINTS
from .._doc_utils import enum_docstrings
from .._exceptions import TailDivergent, ValidationError
from .._kernel import effective_cap, kernel_values
from .._log import log
from .._numerics import LogValue, integrate_oscillatory, integrate_piecewise_power
from ._error_tags import MetivierErrorTag
from ._instance import MetivierInstance
from ._iterates import CutoffTable, IterateTermSum, common_axis, cutoff_table, iterate_terms

__all__ = (
    'GridKind',
    'IterateValues',
    'XGrid',
    'directional_derivative_at_center',
    'evaluate_iterate',
    'evaluate_iterates',
    'evaluate_u',
    'patch_grid',
    'point_grid',
    'segment_grid',
)


@enum_docstrings
class GridKind(str, Enum):
    """Layout of an x-grid."""
    SEGMENT = "segment"
    """Equispaced points on the segment ``x0 + s xi0``, ``|s| <= 2 delta``."""
    PATCH = "patch"
    """A square planar patch spanned by xi0 and one perpendicular direction."""
    POINTS = "points"
    """Arbitrary points without quadrature weights."""


class XGrid(NamedTuple):
    """Points of an x-grid with the coordinates needed for discrete L2 norms."""
    kind: GridKind
    """The layout."""
    points: NDArray
    """Points, shape ``(m, n)``."""
    shape: tuple[int, ...]
    """Shape of the coordinate mesh; ``(m,)`` for segments and point lists."""
    axes: tuple[NDArray, ...]
    """Coordinates along each mesh axis; empty for point lists."""
    basis: NDArray
    """Unit directions of the mesh axes, shape ``(len(axes), n)``."""

    def meta(self) -> dict[str, object]:
        """Grid metadata recorded in reports."""
        record: dict[str, object] = {'kind': self.kind.value, 'points': int(self.points.shape[0]),
                                     'shape': list(self.shape)}
        if self.axes:
            record['extent'] = [[float(a[0]), float(a[-1])] for a in self.axes]
            record['basis'] = self.basis.tolist()
        return record


def segment_grid(inst: MetivierInstance, points: int = SEGMENT_POINTS) -> XGrid:
    """``x0 + s xi0`` for ``points`` equispaced s in ``[-2 delta, 2 delta]``."""
    points = _validate.integer_arg(points, 'points', minimum=2)
    s = np.linspace(-2.0 * inst.delta, 2.0 * inst.delta, points)
    basis = inst.xi0[None].copy()
    return XGrid(GridKind.SEGMENT, inst.x0 + s[:, None] * inst.xi0, (points,), (s,), basis)


def _perpendicular(xi0: NDArray) -> NDArray:
    seed = np.eye(xi0.size)[int(np.argmin(np.abs(xi0)))]
    direction = seed - np.dot(seed, xi0) * xi0
    return direction / np.linalg.norm(direction)


def patch_grid(inst: MetivierInstance, points: int = PATCH_POINTS) -> XGrid:
    """A ``points x points`` patch ``x0 + s1 xi0 + s2 e`` with ``|s1|, |s2| <= 2 delta`` and e perpendicular to xi0.

    :raises ValidationError: If the instance lives on a line.
    """
    if inst.dimension < 2:
        raise ValidationError('a planar patch needs n >= 2', tag=MetivierErrorTag.GRID_DIMENSION)
    points = _validate.integer_arg(points, 'points', minimum=2)
    s = np.linspace(-2.0 * inst.delta, 2.0 * inst.delta, points)
    basis = np.stack([inst.xi0, _perpendicular(inst.xi0)])
    s1, s2 = np.meshgrid(s, s, indexing='ij')
    mesh = inst.x0 + s1[..., None] * basis[0] + s2[..., None] * basis[1]
    return XGrid(GridKind.PATCH, mesh.reshape(-1, inst.dimension), (points, points), (s, s.copy()), basis)


def point_grid(inst: MetivierInstance, points: ArrayLike) -> XGrid:
    """Arbitrary points of shape ``(m, n)``; the L2 norm over them is the plain Euclidean norm."""
    array = np.asarray(points, dtype=float)
    if array.ndim != 2 or array.shape[1] != inst.dimension or not np.all(np.isfinite(array)):
        raise ValidationError(
            f'points must be finite with shape (m, {inst.dimension}), got {array.shape}',
            tag=MetivierErrorTag.GRID_DIMENSION)
    return XGrid(GridKind.POINTS, array, (array.shape[0],), (), np.zeros((0, inst.dimension)))


class IterateValues(NamedTuple):
    """``P^k u`` (or ``D_j^k u``) on an x-grid."""
    k: int
    """The order."""
    direction: Optional[int]
    """The coordinate j for ``D_j^k u``; None for ``P^k u``."""
    values: NDArray
    """Complex values, one per grid point."""
    log_sup_norm: float
    """log of the largest modulus, ``-inf`` when all vanish."""
    log_l2_norm: float
    """log of the discrete L2 norm (trapezoidal weights on segments and patches)."""
    grid: XGrid
    """The grid."""


def _t_range(inst: MetivierInstance, radius: float, power: float) -> tuple[float, float]:
    """The first integration cap and the largest admissible one."""
    limit = math.exp(inst.kernel.weight.domain_cap)
    if radius > 0.0:
        limit = min(limit, (2.0 * inst.delta / radius) ** (1.0 / inst.eps))
    cap = effective_cap(inst.kernel, power + 1.0)
    if cap > limit:
        log.debug("evaluate: kernel cap %.6g clamped to %.6g", cap, limit)
        cap = limit
    return cap, limit


def _breakpoints(inst: MetivierInstance, radius: float, cap: float) -> Optional[NDArray]:
    if cap <= 1.0:
        return None
    kinks = np.exp(inst.n_seq.log_mu[1:])
    pieces = [np.array([1.0, cap]), kinks[(kinks > 1.0) & (kinks < cap)]]
    if radius > 0.0:
        inner = (inst.delta / radius) ** (1.0 / inst.eps)
        if inner < cap:
            pieces.append(np.geomspace(max(inner, 1.0), cap, BAND_CELLS + 1))
    return np.unique(np.concatenate(pieces))


def _integrate_to_decay(inst: MetivierInstance, radius: float, frequency: float,
                        profile: Callable[[NDArray], NDArray], cap: float, limit: float) -> complex:
    """Integrate up to ``cap``, growing it towards ``limit`` while the integrand has not decayed there."""
    while True:
        breakpoints = _breakpoints(inst, radius, cap)
        if breakpoints is None:
            return 0j
        try:
            real, imag = integrate_oscillatory(profile, frequency, breakpoints)
            return complex(float(real), float(imag))
        except TailDivergent:
            if cap >= limit:
                raise
            log.debug("evaluate: no decay at t=%.6g, extending towards %.6g", cap, limit)
            cap = min(cap * CAP_EXTENSION_FACTOR, limit)


def _t_integrals(inst: MetivierInstance, x: NDArray, sums: Sequence[IterateTermSum], power: float, order: int,
                 axis: Optional[int]) -> list[complex]:
    offset = x - inst.x0
    radius = float(np.linalg.norm(offset))
    if radius >= 2.0 * inst.delta:
        return [0j] * len(sums)
    cap, limit = _t_range(inst, radius, power)
    if cap <= 1.0:
        return [0j] * len(sums)
    frequency = float(np.dot(inst.xi0, offset))
    cache: dict[bytes, tuple[NDArray, NDArray, CutoffTable, NDArray]] = {}

    def prepared(t: NDArray) -> tuple[NDArray, NDArray, CutoffTable, NDArray]:
        key = t.tobytes()
        if key not in cache:
            ts = np.asarray(t, dtype=float).reshape(-1)
            points = np.broadcast_to(x, (ts.size, x.size))
            table = cutoff_table(inst.bump, inst.eps, inst.x0, points, ts, order, axis)
            cache[key] = (points, ts, table, np.exp(kernel_values(inst.kernel, np.log(ts))))
        return cache[key]

    results = []
    for terms in sums:
        def profile(t: NDArray, terms: IterateTermSum = terms) -> NDArray:
            points, ts, table, phi = prepared(t)
            return terms.evaluate(points, ts, table=table) * phi

        results.append(_integrate_to_decay(inst, radius, frequency, profile, cap, limit))
    return results


def evaluate_u(inst: MetivierInstance, x: ArrayLike) -> complex:
    """``u(x) = int_1^inf psi(t^eps (x - x0)) Phi_N(t) e^(i t xi0 . (x - x0)) dt``.

    Exactly 0 when ``|x - x0| >= 2 delta``.

    :raises TailDivergent: If the integrand has not decayed at ``mu_K``.
    """
    point = _validate.vector_arg(x, 'x', inst.dimension)
    return _t_integrals(inst, point, [iterate_terms(inst, 0)], 0.0, 0, 0)[0]


def directional_derivative_at_center(inst: MetivierInstance, k: int) -> LogValue:
    """``D_xi0^k u(x0) = int_1^inf t^k Phi_N(t) dt`` in closed form.

    :raises TailDivergent: If ``K <= k + 1`` for N.
    """
    k = _validate.integer_arg(k, 'k', minimum=0)
    return integrate_piecewise_power(inst.n_seq, float(k), lower=1.0)


def _norms(values: NDArray, grid: XGrid) -> tuple[float, float]:
    moduli = np.abs(values)
    peak = float(moduli.max(initial=0.0))
    if grid.kind is GridKind.POINTS:
        square = float(np.sum(moduli ** 2))
    else:
        square = moduli.reshape(grid.shape) ** 2
        for axis in reversed(grid.axes):
            square = trapezoid(square, axis, axis=-1)
        square = float(square)
    log_sup = math.log(peak) if peak > 0.0 else -math.inf
    log_l2 = 0.5 * math.log(square) if square > 0.0 else -math.inf
    return log_sup, log_l2


def evaluate_iterates(inst: MetivierInstance,
                      ks: Sequence[int],
                      grid: Optional[XGrid] = None,
                      direction: Optional[int] = None) -> list[IterateValues]:
    """``P^k u`` (or ``D_j^k u``) for several k on one grid, sharing the t-nodes and cut-off tables.

    :param MetivierInstance inst: The instance.
    :param Sequence[int] ks: Orders, each at most 12.
    :param XGrid | None grid: The x-grid; default :func:`segment_grid`.
    :param int | None direction: A coordinate j (0-based) for ``D_j^k u``.
    :return list[IterateValues]: One entry per k, in the given order.
    :raises BudgetExceeded: If a symbolic expansion or a quadrature rule is too large.
    :raises TailDivergent: If an integrand has not decayed at ``mu_K``.
    """
    orders = [_validate.integer_arg(k, 'k', minimum=0, maximum=MAX_ITERATE_ORDER) for k in ks]
    if not orders:
        return []
    grid = segment_grid(inst) if grid is None else grid
    if not isinstance(grid, XGrid):
        raise ValidationError(f'grid must be an XGrid, got {type(grid).__name__}', tag=MetivierErrorTag.GRID_DIMENSION)
    sums = [iterate_terms(inst, k, direction) for k in orders]
    order = max(terms.nu_order for terms in sums)
    power = max(terms.max_t_power for terms in sums)
    axis = common_axis(sums)
    table = np.array([_t_integrals(inst, x, sums, power, order, axis) for x in grid.points], dtype=complex)
    log.debug("evaluate_iterates: k=%s on %d points (axis %s)", orders, grid.points.shape[0], axis)
    out = []
    for column, k in enumerate(orders):
        values = table[:, column]
        out.append(IterateValues(k, direction, values, *_norms(values, grid), grid))
    return out


def evaluate_iterate(inst: MetivierInstance,
                     k: int,
                     grid: Optional[XGrid] = None,
                     direction: Optional[int] = None) -> IterateValues:
    """``P^k u(x) = int_1^inf Q_k(x, t) Phi_N(t) e^(i t xi0 . (x - x0)) dt`` on an x-grid, with its norms.

    Grid points with ``|x - x0| >= 2 delta`` get exact zeros.
    """
    return evaluate_iterates(inst, [k], grid, direction)[0]
