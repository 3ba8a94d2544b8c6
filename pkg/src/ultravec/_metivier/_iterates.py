"""Symbolic expansion of the iterate integrands.

With ``theta = t xi0 . (x - x0)`` the iterates of u are ``P^k u = int_1^inf Q_k e^(i theta) Phi_N dt``
where ``Q_0 = psi(t^eps (x - x0))`` and::

    Q_(k+1) = sum_(|alpha| <= d) 1/alpha! d_xi^alpha p(x, t xi0) D^alpha Q_k

Along a coordinate direction j the same holds with ``Q_(k+1) = D_j Q_k + t xi0_j Q_k``.
Every ``Q_k`` is a finite sum of terms ``c x^beta t^(a + b eps) (d^nu psi)(t^eps (x - x0))``, kept
exactly as a map from ``(beta, a, b, nu)`` to the complex coefficient c.
"""
import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .. import _validate
from .._constants import DEFAULT_SEED, MAX_ITERATE_ORDER, MAX_JET_ORDER, TERM_BUDGET
from .._exceptions import BudgetExceeded, ValidationError
from .._immutable import Immutable, frozen_array
from .._log import log
from .._numerics import multi_indices
from ._bump import BumpFunction, bump_axis_derivatives, bump_derivatives
from ._error_tags import MetivierErrorTag
from ._instance import MetivierInstance
from ._operator import MultiIndex

__all__ = (
    'CutoffTable',
    'IterateTerm',
    'IterateTermSum',
    'band_samples',
    'common_axis',
    'cutoff_table',
    'differentiate_terms',
    'iterate_terms',
    'recursion_consistency',
)

_Key = tuple[MultiIndex, int, int, MultiIndex]
_Terms = dict[_Key, complex]
_CHUNK_ELEMENTS = 1 << 21


class IterateTerm(NamedTuple):
    """``coefficient * x^beta * t^(a + b eps) * (d^nu psi)(t^eps (x - x0))``."""
    coefficient: complex
    """The coefficient c."""
    beta: MultiIndex
    """Monomial exponent in x."""
    a: int
    """Integer part of the t exponent."""
    b: int
    """Multiple of eps in the t exponent."""
    nu: MultiIndex
    """Derivative of the cut-off."""


@dataclass(frozen=True, eq=False)
class IterateTermSum(Immutable):
    """A finite sum of iterate terms bound to its cut-off.

    :param tuple terms: Terms sorted by ``(beta, a, b, nu)``, no two with the same key.
    :param float eps: The exponent epsilon.
    :param NDArray x0: Centre of the cut-off.
    :param BumpFunction bump: The cut-off psi.
    """
    terms: tuple[IterateTerm, ...]
    eps: float
    x0: NDArray
    bump: BumpFunction
    _coefficients: NDArray = field(init=False, repr=False)
    _betas: NDArray = field(init=False, repr=False)
    _powers: NDArray = field(init=False, repr=False)
    _nus: tuple[MultiIndex, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'x0', frozen_array(self.x0))
        n = self.x0.size
        object.__setattr__(self, '_coefficients', frozen_array([term.coefficient for term in self.terms], complex))
        object.__setattr__(self, '_betas', frozen_array(np.reshape([term.beta for term in self.terms], (-1, n))))
        object.__setattr__(self, '_powers', frozen_array([term.a + term.b * self.eps for term in self.terms]))
        object.__setattr__(self, '_nus', tuple(term.nu for term in self.terms))

    @classmethod
    def from_map(cls, terms: _Terms, eps: float, x0: ArrayLike, bump: BumpFunction) -> 'IterateTermSum':
        """Build from a key map, dropping zero coefficients."""
        ordered = tuple(IterateTerm(c, *key) for key, c in sorted(terms.items()) if c != 0)
        return cls(ordered, eps, np.asarray(x0, dtype=float), bump)

    def as_map(self) -> _Terms:
        """The key map ``(beta, a, b, nu) -> c``."""
        return {(term.beta, term.a, term.b, term.nu): term.coefficient for term in self.terms}

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[IterateTerm]:
        return iter(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IterateTermSum):
            return NotImplemented
        return self.terms == other.terms and self.eps == other.eps and np.array_equal(self.x0, other.x0)

    __hash__ = None  # type: ignore[assignment]

    @property
    def nu_order(self) -> int:
        """Largest ``|nu|`` of a term."""
        return max((sum(nu) for nu in self._nus), default=0)

    @property
    def max_t_power(self) -> float:
        """Largest ``a + b eps``."""
        return float(self._powers.max()) if self._powers.size else 0.0

    @property
    def axis(self) -> Optional[int]:
        """The coordinate every ``nu`` lies along, or None when the terms mix coordinates."""
        return common_axis([self])

    def evaluate(self, x: ArrayLike, t: ArrayLike, *, table: Optional['CutoffTable'] = None) -> NDArray:
        """The complex sum at points x of shape ``(..., n)`` and ``t >= 1`` broadcast against them.

        A :class:`CutoffTable` computed by :func:`cutoff_table` for the same flattened points may be
        passed to share cut-off derivatives between term sums.
        """
        points = np.asarray(x, dtype=float)
        ts = np.asarray(t, dtype=float)
        shape = np.broadcast_shapes(points.shape[:-1], ts.shape)
        points = np.broadcast_to(points, shape + points.shape[-1:]).reshape(-1, points.shape[-1])
        ts = np.broadcast_to(ts, shape).reshape(-1)
        out = np.zeros(ts.size, dtype=complex)
        if not self.terms:
            return out.reshape(shape)
        if table is None:
            table = cutoff_table(self.bump, self.eps, self.x0, points, ts, self.nu_order, self.axis)
        positions = table.positions(self._nus)
        chunk = max(1, _CHUNK_ELEMENTS // len(self.terms))
        for first in range(0, ts.size, chunk):
            rows = table.values[first:first + chunk]
            live = np.flatnonzero(np.any(rows != 0.0, axis=-1))
            if not live.size:
                continue
            xs = points[first + live]
            monomials = np.prod(xs[:, None, :] ** self._betas[None], axis=-1)
            scale = ts[first + live, None] ** self._powers[None]
            out[first + live] = np.sum(self._coefficients * monomials * scale * rows[live][:, positions], axis=-1)
        return out.reshape(shape)


class CutoffTable(NamedTuple):
    """Cut-off derivatives ``(d^nu psi)(t^eps (x - x0))`` at flattened ``(x, t)`` points."""
    values: NDArray
    """Rows per point; columns follow ``multi_indices(n, order)``, or ``m = 0..order`` along axis."""
    order: int
    """Highest derivative order."""
    axis: Optional[int]
    """The single differentiated coordinate, or None for the full multi-index layout."""

    def positions(self, nus: Sequence[MultiIndex]) -> NDArray:
        """Columns of the given derivative multi-indices."""
        if self.axis is None:
            index = {nu: i for i, nu in enumerate(multi_indices(len(nus[0]), self.order))}
            return np.array([index[tuple(nu)] for nu in nus])
        return np.array([nu[self.axis] for nu in nus])


def common_axis(sums: Sequence[IterateTermSum]) -> Optional[int]:
    """The one coordinate every ``nu`` of the sums lies along (0 when none is differentiated)."""
    nus = [nu for terms in sums for nu in terms._nus]  # pylint: disable=protected-access
    axes = {i for nu in nus for i, entry in enumerate(nu) if entry}
    if len(axes) > 1:
        return None
    return axes.pop() if axes else 0


def cutoff_table(bump: BumpFunction, eps: float, x0: NDArray, points: NDArray, ts: NDArray, order: int,
                 axis: Optional[int]) -> CutoffTable:
    """Cut-off derivatives up to order at ``y = t^eps (x - x0)`` for flattened points and t."""
    if order > MAX_JET_ORDER:
        raise ValidationError(
            f'cut-off derivatives of order {order} exceed the jet cap', tag=MetivierErrorTag.TERM_BUDGET)
    ys = ts[:, None] ** eps * (points - x0)
    if axis is None:
        return CutoffTable(bump_derivatives(bump, ys, order), order, None)
    return CutoffTable(bump_axis_derivatives(bump, ys, order, axis), order, axis)


def _check_budget(terms: _Terms) -> None:
    if len(terms) > TERM_BUDGET:
        raise BudgetExceeded(
            f'iterate expansion reached {len(terms)} terms', tag=MetivierErrorTag.TERM_BUDGET, budget=TERM_BUDGET)


def _add(target: _Terms, key: _Key, value: complex) -> None:
    total = target.get(key, 0j) + value
    if total == 0:
        target.pop(key, None)
    else:
        target[key] = total


def _apply_d(terms: _Terms, j: int) -> _Terms:
    """``D_j = -i d/dx_j`` of a term map."""
    out: _Terms = {}
    for (beta, a, b, nu), c in terms.items():
        if beta[j]:
            lowered = beta[:j] + (beta[j] - 1,) + beta[j + 1:]
            _add(out, (lowered, a, b, nu), -1j * beta[j] * c)
        raised = nu[:j] + (nu[j] + 1,) + nu[j + 1:]
        _add(out, (beta, a, b + 1, raised), -1j * c)
    _check_budget(out)
    return out


def _apply_d_power(terms: _Terms, alpha: Sequence[int], memo: dict[MultiIndex, _Terms]) -> _Terms:
    """``D^alpha`` of a term map, reusing lower powers from memo."""
    alpha = tuple(alpha)
    if alpha in memo:
        return memo[alpha]
    j = next(i for i, entry in enumerate(alpha) if entry)
    lower = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]
    result = _apply_d(_apply_d_power(terms, lower, memo), j)
    memo[alpha] = result
    return result


def _multipliers(inst: MetivierInstance) -> list[tuple[MultiIndex, float, list[tuple[MultiIndex, int, float]]]]:
    """For every alpha, ``1/alpha!`` and the terms ``(beta', t power, c')`` of ``d_xi^alpha p(x, t xi0)``."""
    operator = inst.operator
    result = []
    for alpha in multi_indices(operator.dimension, operator.order):
        entries: dict[tuple[MultiIndex, int], float] = {}
        for gamma, coefficient in operator.terms:
            if any(g < a for g, a in zip(gamma, alpha)):
                continue
            rest = tuple(g - a for g, a in zip(gamma, alpha))
            weight = math.prod(math.perm(g, a) for g, a in zip(gamma, alpha))
            weight *= math.prod(float(inst.xi0[i]) ** r for i, r in enumerate(rest))
            if weight == 0.0:
                continue
            for beta, c in coefficient.terms:
                key = (beta, sum(rest))
                entries[key] = entries.get(key, 0.0) + weight * c
        kept = [(beta, power, c) for (beta, power), c in sorted(entries.items()) if c != 0.0]
        if kept:
            factorial = math.prod(math.factorial(a) for a in alpha)
            result.append((alpha, 1.0 / factorial, kept))
    return result


def _operator_step(inst: MetivierInstance, terms: _Terms) -> _Terms:
    out: _Terms = {}
    memo: dict[MultiIndex, _Terms] = {(0,) * inst.dimension: terms}
    for alpha, inverse_factorial, multiplier in _multipliers(inst):
        derived = _apply_d_power(terms, alpha, memo)
        for (beta, a, b, nu), c in derived.items():
            for beta_p, power, c_p in multiplier:
                key = (tuple(x + y for x, y in zip(beta, beta_p)), a + power, b, nu)
                _add(out, key, c * c_p * inverse_factorial)
        _check_budget(out)
    return out


def _direction_step(inst: MetivierInstance, terms: _Terms, j: int) -> _Terms:
    out = _apply_d(terms, j)
    xi = float(inst.xi0[j])
    if xi != 0.0:
        for (beta, a, b, nu), c in terms.items():
            _add(out, (beta, a + 1, b, nu), xi * c)
    _check_budget(out)
    return out


def _direction_arg(inst: MetivierInstance, direction: Optional[int]) -> Optional[int]:
    if direction is None:
        return None
    if isinstance(direction, bool) or not isinstance(direction, int) or not 0 <= direction < inst.dimension:
        raise ValidationError(
            f'direction must lie in [0, {inst.dimension - 1}], got {direction!r}',
            tag=MetivierErrorTag.INDEX_OUT_OF_RANGE)
    return direction


def iterate_terms(inst: MetivierInstance, k: int, direction: Optional[int] = None) -> IterateTermSum:
    """The symbolic integrand ``Q_k`` of ``P^k u``, or of ``D_j^k u`` when a direction j is given.

    Expansions are memoised on the instance and extended from the highest cached k.

    :param MetivierInstance inst: The instance.
    :param int k: Iterate order, at most 12.
    :param int | None direction: A 0-based coordinate index for the ``D_j`` recursion.
    :return IterateTermSum: The term sum.
    :raises BudgetExceeded: If the expansion exceeds 10^6 terms.
    """
    k = _validate.integer_arg(k, 'k', minimum=0, maximum=MAX_ITERATE_ORDER)
    direction = _direction_arg(inst, direction)
    cache = inst._iterates  # pylint: disable=protected-access
    with inst._lock:  # pylint: disable=protected-access
        key = (k, direction)
        if key in cache:
            return cache[key]
        start = max((j for j in range(k) if (j, direction) in cache), default=None)
        if start is None:
            n = inst.dimension
            current: _Terms = {((0,) * n, 0, 0, (0,) * n): 1 + 0j}
            cache[(0, direction)] = IterateTermSum.from_map(current, inst.eps, inst.x0, inst.bump)
            start = 0
        current = cache[(start, direction)].as_map()
        for j in range(start + 1, k + 1):
            if direction is None:
                current = _operator_step(inst, current)
            else:
                current = _direction_step(inst, current, direction)
            cache[(j, direction)] = IterateTermSum.from_map(current, inst.eps, inst.x0, inst.bump)
            log.debug("iterate_terms: k=%d, direction=%s, %d terms", j, direction, len(current))
        return cache[key]


def differentiate_terms(terms: IterateTermSum, nu: Sequence[int]) -> IterateTermSum:
    """``D^nu`` of a term sum, with ``D = -i d/dx``.

    :raises BudgetExceeded: If the result exceeds 10^6 terms.
    """
    n = terms.x0.size
    nu = tuple(_validate.integer_arg(entry, 'nu', minimum=0) for entry in nu)
    if len(nu) != n:
        raise ValidationError(f'nu must have {n} entries, got {len(nu)}', tag=MetivierErrorTag.INDEX_OUT_OF_RANGE)
    current = terms.as_map()
    for j, count in enumerate(nu):
        for _ in range(count):
            current = _apply_d(current, j)
    return IterateTermSum.from_map(current, terms.eps, terms.x0, terms.bump)


def band_samples(inst: MetivierInstance, samples: int, seed: int = DEFAULT_SEED,
                 t_range: tuple[float, float] = (1.0, 10.0)) -> tuple[NDArray, NDArray]:
    """Random ``(x, t)`` with ``t^eps |x - x0|`` inside the transition band of the cut-off."""
    rng = np.random.default_rng(seed)
    ts = np.exp(rng.uniform(math.log(t_range[0]), math.log(t_range[1]), samples))
    directions = rng.standard_normal((samples, inst.dimension))
    directions /= np.linalg.norm(directions, axis=-1, keepdims=True)
    radii = inst.delta * rng.uniform(1.1, 1.9, samples)
    xs = inst.x0 + directions * (radii * ts ** -inst.eps)[:, None]
    return xs, ts


def recursion_consistency(inst: MetivierInstance, k: int, samples: int = 5, seed: int = DEFAULT_SEED) -> float:
    """Largest relative gap between ``Q_k`` and the recursion applied numerically to ``Q_(k-1)``.

    The right side sums ``1/alpha! d_xi^alpha p(x, t xi0) (D^alpha Q_(k-1))(x, t)`` with the symbol
    derivatives taken from the operator directly.

    :param MetivierInstance inst: The instance.
    :param int k: Order, at least 1.
    :param int samples: Number of random ``(x, t)`` in the band of the cut-off.
    :param int seed: Seed of the samples.
    :return float: ``max |lhs - rhs| / max(|lhs|, |rhs|)``, 0 where both vanish.
    """
    k = _validate.integer_arg(k, 'k', minimum=1, maximum=MAX_ITERATE_ORDER)
    samples = _validate.integer_arg(samples, 'samples', minimum=1)
    xs, ts = band_samples(inst, samples, seed)
    lhs = iterate_terms(inst, k).evaluate(xs, ts)
    previous = iterate_terms(inst, k - 1)
    rhs = np.zeros(samples, dtype=complex)
    covectors = ts[:, None] * inst.xi0
    for alpha in multi_indices(inst.dimension, inst.order):
        factor = inst.operator.symbol_derivative(alpha, xs, covectors)
        if not np.any(factor):
            continue
        inverse_factorial = 1.0 / math.prod(math.factorial(a) for a in alpha)
        rhs += inverse_factorial * factor * differentiate_terms(previous, alpha).evaluate(xs, ts)
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    with np.errstate(invalid='ignore', divide='ignore'):
        gap = np.where(scale > 0.0, np.abs(lhs - rhs) / scale, 0.0)
    return float(gap.max())
