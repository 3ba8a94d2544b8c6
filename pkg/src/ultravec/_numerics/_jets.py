"""Truncated Taylor arithmetic.

Two jet algebras share one interface. :class:`UnivariateJets` carries coefficients of a
power series in one variable; :class:`MultiJets` carries coefficients indexed by
multi-indices of total degree at most ``order``. Jets are numpy arrays whose last axis
holds the coefficients, so a batch of evaluation points is processed at once.

Coefficients are Taylor coefficients ``f^(alpha)(x) / alpha!``.
"""
import math
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import csr_matrix
from scipy.special import gammaln

from .._constants import MAX_JET_ORDER
from .._exceptions import ValidationError
from ._error_tags import NumericsErrorTag

__all__ = ('JetAlgebra', 'MultiJets', 'UnivariateJets', 'multi_indices')


class JetAlgebra(Protocol):
    """Operations shared by the jet algebras."""
    size: int

    def constant(self, value: ArrayLike) -> NDArray: ...
    def mul(self, a: NDArray, b: NDArray) -> NDArray: ...
    def exp(self, a: NDArray) -> NDArray: ...
    def reciprocal(self, a: NDArray) -> NDArray: ...
    def power(self, a: NDArray, exponent: float) -> NDArray: ...


def _order_arg(order: int) -> int:
    if not 0 <= order <= MAX_JET_ORDER:
        raise ValidationError(
            f'jet order must lie in [0, {MAX_JET_ORDER}], got {order}', tag=NumericsErrorTag.ORDER_OUT_OF_RANGE)
    return order


@lru_cache(maxsize=64)
def multi_indices(nvars: int, order: int) -> tuple[tuple[int, ...], ...]:
    """All multi-indices of ``nvars`` entries with total degree at most ``order``, graded."""
    result: list[tuple[int, ...]] = []
    for degree in range(order + 1):
        for combo in combinations_with_replacement(range(nvars), degree):
            index = [0] * nvars
            for var in combo:
                index[var] += 1
            result.append(tuple(index))
    return tuple(result)


class _Algebra:
    size: int
    order: int

    def constant(self, value: ArrayLike) -> NDArray:
        """The constant jet of value (broadcast over the batch shape of value)."""
        base = np.asarray(value, dtype=float)
        out = np.zeros(base.shape + (self.size,))
        out[..., 0] = base
        return out

    @staticmethod
    def value(a: NDArray) -> NDArray:
        """The zeroth coefficient."""
        return a[..., 0]

    def add(self, a: NDArray, b: NDArray) -> NDArray:
        return a + b

    def scale(self, a: NDArray, factor: ArrayLike) -> NDArray:
        return a * np.asarray(factor, dtype=float)[..., None]

    def mul(self, a: NDArray, b: NDArray) -> NDArray:
        raise NotImplementedError

    def _series(self, a: NDArray, ratios: list[float]) -> NDArray:
        """``sum_k c_k x^k`` for the nilpotent ``x = a`` with ``c_k / c_(k-1) = ratios[k-1]``."""
        result = self.constant(np.ones(a.shape[:-1]))
        for ratio in reversed(ratios):
            result = self.mul(a, result) * ratio
            result[..., 0] += 1.0
        return result

    def _split(self, a: NDArray) -> tuple[NDArray, NDArray]:
        head = a[..., 0]
        tail = a.copy()
        tail[..., 0] = 0.0
        return head, tail

    def exp(self, a: NDArray) -> NDArray:
        """``e^a``."""
        head, tail = self._split(a)
        return self.scale(self._series(tail, [1.0 / k for k in range(1, self.order + 1)]), np.exp(head))

    def reciprocal(self, a: NDArray) -> NDArray:
        """``1/a``; the zeroth coefficient must be non-zero."""
        head, tail = self._split(a)
        return self.scale(self._series(self.scale(tail, -1.0 / head), [1.0] * self.order), 1.0 / head)

    def power(self, a: NDArray, exponent: float) -> NDArray:
        """``a^exponent``; the zeroth coefficient must be positive."""
        head, tail = self._split(a)
        ratios = [(exponent - k + 1.0) / k for k in range(1, self.order + 1)]
        return self.scale(self._series(self.scale(tail, 1.0 / head), ratios), head ** exponent)


class UnivariateJets(_Algebra):
    """Jets in one variable up to ``order``.

    :param int order: Highest power kept.
    """
    def __init__(self, order: int) -> None:
        self.order = _order_arg(order)
        self.size = order + 1

    def variable(self, value: ArrayLike, slope: ArrayLike = 1.0) -> NDArray:
        """The jet ``value + slope*s``."""
        out = self.constant(value)
        if self.order:
            out[..., 1] = slope
        return out

    def mul(self, a: NDArray, b: NDArray) -> NDArray:
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
        for n in range(self.size):
            out[..., n:] += a[..., n:n + 1] * b[..., :self.size - n]
        return out

    def exp(self, a: NDArray) -> NDArray:
        out = np.zeros_like(a)
        out[..., 0] = np.exp(a[..., 0])
        for n in range(1, self.size):
            k = np.arange(1, n + 1)
            out[..., n] = np.sum(k * a[..., 1:n + 1] * out[..., n - 1::-1][..., :n], axis=-1) / n
        return out

    def reciprocal(self, a: NDArray) -> NDArray:
        out = np.zeros_like(a)
        out[..., 0] = 1.0 / a[..., 0]
        for n in range(1, self.size):
            out[..., n] = -np.sum(a[..., 1:n + 1] * out[..., n - 1::-1][..., :n], axis=-1) * out[..., 0]
        return out

    def power(self, a: NDArray, exponent: float) -> NDArray:
        out = np.zeros_like(a)
        out[..., 0] = a[..., 0] ** exponent
        for n in range(1, self.size):
            k = np.arange(1, n + 1)
            weights = (exponent + 1.0) * k - n
            out[..., n] = np.sum(weights * a[..., 1:n + 1] * out[..., n - 1::-1][..., :n], axis=-1) / (n * a[..., 0])
        return out

    def derivatives(self, a: NDArray) -> NDArray:
        """Derivatives ``f^(n)`` from coefficients."""
        return a * np.exp(gammaln(np.arange(1, self.size + 1)))


class MultiJets(_Algebra):
    """Jets in ``nvars`` variables up to total degree ``order``.

    :param int nvars: Number of variables.
    :param int order: Highest total degree kept.
    """
    def __init__(self, nvars: int, order: int) -> None:
        self.order = _order_arg(order)
        self.nvars = nvars
        self.indices = multi_indices(nvars, order)
        self.size = len(self.indices)
        self._position = {index: i for i, index in enumerate(self.indices)}
        self._left, self._right, self._scatter = _pair_table(nvars, order)

    def position(self, index: tuple[int, ...]) -> int:
        """Coefficient position of a multi-index."""
        return self._position[tuple(index)]

    def variable(self, value: ArrayLike, var: int) -> NDArray:
        """The jet of ``value + y_var``."""
        out = self.constant(value)
        if self.order:
            unit = [0] * self.nvars
            unit[var] = 1
            out[..., self._position[tuple(unit)]] = 1.0
        return out

    def mul(self, a: NDArray, b: NDArray) -> NDArray:
        shape = np.broadcast_shapes(a.shape, b.shape)
        products = (np.broadcast_to(a, shape)[..., self._left] * np.broadcast_to(b, shape)[..., self._right])
        flat = products.reshape(-1, self._left.size)
        return np.asarray(self._scatter @ flat.T).T.reshape(shape)

    def derivative(self, a: NDArray, index: tuple[int, ...]) -> NDArray:
        """``d^index f`` from coefficients."""
        factorial = math.prod(math.factorial(n) for n in index)
        return a[..., self._position[tuple(index)]] * factorial


@lru_cache(maxsize=16)
def _pair_table(nvars: int, order: int) -> tuple[NDArray, NDArray, csr_matrix]:
    indices = multi_indices(nvars, order)
    position = {index: i for i, index in enumerate(indices)}
    degree = np.array([sum(index) for index in indices])
    left: list[int] = []
    right: list[int] = []
    target: list[int] = []
    for i, a in enumerate(indices):
        for j in np.flatnonzero(degree <= order - degree[i]):
            left.append(i)
            right.append(int(j))
            target.append(position[tuple(x + y for x, y in zip(a, indices[j]))])
    left_arr = np.array(left)
    scatter = csr_matrix((np.ones(left_arr.size), (np.array(target), np.arange(left_arr.size))),
                         shape=(len(indices), left_arr.size))
    return left_arr, np.array(right), scatter
