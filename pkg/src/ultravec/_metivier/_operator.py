"""Linear differential operators with polynomial coefficients.

An operator ``P = sum_alpha p_alpha(x) D^alpha`` uses ``D = -i d/dx``, so its symbol is
``p(x, xi) = sum_alpha p_alpha(x) xi^alpha``. Coefficients are real polynomials, which keeps the
symbolic iterate expansion exact and makes every coefficient bound a finite sum.
"""
import math
from dataclasses import dataclass, field
from itertools import product as cartesian
from numbers import Real
from typing import Any, Mapping, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .. import _validate
from .._exceptions import ValidationError
from .._immutable import Immutable
from .._numerics import multi_indices
from .._weightseq import WeightSequence
from ._error_tags import MetivierErrorTag

__all__ = (
    'DiffOperator',
    'MultiIndex',
    'Polynomial',
    'coefficient_bound',
    'derivative_operator',
    'laplacian',
    'operator_from_descriptor',
    'operator_to_descriptor',
)

MultiIndex = tuple[int, ...]
"""A multi-index, one non-negative entry per coordinate."""


def _multi_index(value: Any, dimension: int, name: str, tag: MetivierErrorTag) -> MultiIndex:
    try:
        index = tuple(int(entry) for entry in value)
    except (TypeError, ValueError) as err:
        raise ValidationError(f'{name} must be a sequence of integers, got {value!r}', tag=tag) from err
    if len(index) != dimension or any(entry < 0 for entry in index) or any(
            isinstance(entry, bool) or int(entry) != entry for entry in value):
        raise ValidationError(f'{name} must hold {dimension} non-negative integers, got {value!r}', tag=tag)
    return index


def _factorial(index: MultiIndex) -> int:
    return math.prod(math.factorial(entry) for entry in index)


def _falling(gamma: MultiIndex, alpha: MultiIndex) -> int:
    """``gamma! / (gamma - alpha)!``."""
    return math.prod(math.perm(g, a) for g, a in zip(gamma, alpha))


@dataclass(frozen=True)
class Polynomial(Immutable):
    """A real polynomial ``sum c_beta x^beta`` in ``nvars`` variables.

    Terms with equal exponents are merged, zero coefficients dropped and the rest sorted, so two
    polynomials with the same coefficients compare equal.

    :param int nvars: Number of variables.
    :param tuple terms: ``(beta, c)`` pairs.
    :raises ValidationError: On malformed exponents or non-finite coefficients.
    """
    nvars: int
    terms: tuple[tuple[MultiIndex, float], ...] = ()

    def __post_init__(self) -> None:
        nvars = _validate.integer_arg(self.nvars, 'nvars', minimum=1)
        merged: dict[MultiIndex, float] = {}
        for entry in self.terms:
            try:
                beta, coefficient = entry
            except (TypeError, ValueError) as err:
                raise ValidationError(
                    f'polynomial terms are (beta, c) pairs, got {entry!r}',
                    tag=MetivierErrorTag.INVALID_POLYNOMIAL) from err
            beta = _multi_index(beta, nvars, 'beta', MetivierErrorTag.INVALID_POLYNOMIAL)
            if isinstance(coefficient, bool) or not isinstance(coefficient, Real) or not math.isfinite(coefficient):
                raise ValidationError(
                    f'coefficient of x^{beta} must be a finite real, got {coefficient!r}',
                    tag=MetivierErrorTag.INVALID_POLYNOMIAL)
            merged[beta] = merged.get(beta, 0.0) + float(coefficient)
        object.__setattr__(self, 'nvars', nvars)
        object.__setattr__(self, 'terms', tuple(sorted((b, c) for b, c in merged.items() if c != 0.0)))

    @classmethod
    def constant(cls, nvars: int, value: float) -> 'Polynomial':
        """The constant polynomial value."""
        return cls(nvars, (((0,) * nvars, value),))

    @classmethod
    def monomial(cls, beta: Sequence[int], value: float = 1.0) -> 'Polynomial':
        """``value * x^beta``."""
        return cls(len(beta), ((tuple(beta), value),))

    @property
    def is_zero(self) -> bool:
        """True when no term is left."""
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree, 0 for the zero polynomial."""
        return max((sum(beta) for beta, _ in self.terms), default=0)

    def __call__(self, x: ArrayLike) -> NDArray:
        """Values at points of shape ``(..., nvars)``."""
        points = np.asarray(x, dtype=float)
        out = np.zeros(points.shape[:-1])
        for beta, coefficient in self.terms:
            out = out + coefficient * np.prod(points ** np.asarray(beta, dtype=float), axis=-1)
        return out

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        if not isinstance(other, Polynomial):
            return NotImplemented
        return Polynomial(self.nvars, self.terms + other.terms)

    def scale(self, factor: float) -> 'Polynomial':
        """``factor * self``."""
        return Polynomial(self.nvars, tuple((beta, factor * c) for beta, c in self.terms))

    def derivative(self, nu: Sequence[int]) -> 'Polynomial':
        """``d^nu`` of the polynomial."""
        nu = tuple(nu)
        result = []
        for beta, coefficient in self.terms:
            if all(b >= n for b, n in zip(beta, nu)):
                lowered = tuple(b - n for b, n in zip(beta, nu))
                result.append((lowered, coefficient * _falling(beta, nu)))
        return Polynomial(self.nvars, tuple(result))

    def abs_bound(self, center: ArrayLike, radius: float) -> float:
        """``sum |c_beta| prod (|center_i| + radius)^beta_i``, a bound of ``|p|`` on the ball."""
        reach = np.abs(np.asarray(center, dtype=float)) + radius
        return float(sum(abs(c) * np.prod(reach ** np.asarray(beta, dtype=float)) for beta, c in self.terms))


@dataclass(frozen=True, eq=False)
class DiffOperator(Immutable):
    """``P = sum_alpha p_alpha(x) D^alpha`` with polynomial coefficients.

    :param int dimension: Number of variables n.
    :param tuple terms: ``(alpha, p_alpha)`` pairs; a real number stands for a constant coefficient.
    :raises ValidationError: On malformed terms or when every coefficient vanishes.
    """
    dimension: int
    terms: tuple[tuple[MultiIndex, Polynomial], ...]
    order: int = field(init=False)
    """The order d, the largest ``|alpha|`` with a non-zero coefficient."""

    def __post_init__(self) -> None:
        dimension = _validate.integer_arg(self.dimension, 'dimension', minimum=1)
        merged: dict[MultiIndex, Polynomial] = {}
        for entry in self.terms:
            try:
                alpha, coefficient = entry
            except (TypeError, ValueError) as err:
                raise ValidationError(
                    f'operator terms are (alpha, coefficient) pairs, got {entry!r}',
                    tag=MetivierErrorTag.INVALID_OPERATOR) from err
            alpha = _multi_index(alpha, dimension, 'alpha', MetivierErrorTag.INVALID_OPERATOR)
            if isinstance(coefficient, Real) and not isinstance(coefficient, bool):
                coefficient = Polynomial.constant(dimension, float(coefficient))
            if not isinstance(coefficient, Polynomial) or coefficient.nvars != dimension:
                raise ValidationError(
                    f'coefficient of D^{alpha} must be a polynomial in {dimension} variables',
                    tag=MetivierErrorTag.INVALID_OPERATOR)
            merged[alpha] = merged[alpha] + coefficient if alpha in merged else coefficient
        kept = tuple(sorted((alpha, p) for alpha, p in merged.items() if not p.is_zero))
        if not kept:
            raise ValidationError('the operator has no non-zero coefficient', tag=MetivierErrorTag.ZERO_PRINCIPAL_PART)
        object.__setattr__(self, 'dimension', dimension)
        object.__setattr__(self, 'terms', kept)
        object.__setattr__(self, 'order', max(sum(alpha) for alpha, _ in kept))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dimension, self.terms))

    @property
    def degree(self) -> int:
        """Largest degree of a coefficient."""
        return max(p.degree for _, p in self.terms)

    def _sum(self, x: ArrayLike, xi: ArrayLike, alpha: MultiIndex, principal: bool) -> NDArray:
        points = np.asarray(x, dtype=float)
        covectors = np.asarray(xi, dtype=float)
        out: NDArray = np.zeros(np.broadcast_shapes(points.shape[:-1], covectors.shape[:-1]))
        for gamma, coefficient in self.terms:
            if principal and sum(gamma) != self.order:
                continue
            if any(g < a for g, a in zip(gamma, alpha)):
                continue
            rest = np.asarray([g - a for g, a in zip(gamma, alpha)], dtype=float)
            factor = _falling(gamma, alpha) * np.prod(covectors ** rest, axis=-1)
            out = out + coefficient(points) * factor
        return out

    def symbol(self, x: ArrayLike, xi: ArrayLike) -> NDArray:
        """``p(x, xi)``; x and xi broadcast over leading axes."""
        return self._sum(x, xi, (0,) * self.dimension, principal=False)

    def principal_symbol(self, x: ArrayLike, xi: ArrayLike) -> NDArray:
        """``p_d(x, xi)``."""
        return self._sum(x, xi, (0,) * self.dimension, principal=True)

    def symbol_derivative(self, alpha: Sequence[int], x: ArrayLike, xi: ArrayLike) -> NDArray:
        """``d_xi^alpha p(x, xi)``."""
        alpha = _multi_index(alpha, self.dimension, 'alpha', MetivierErrorTag.INVALID_OPERATOR)
        return self._sum(x, xi, alpha, principal=False)

    def __repr__(self) -> str:
        return f'DiffOperator(n={self.dimension}, d={self.order}, terms={len(self.terms)})'


def derivative_operator(dimension: int, index: int) -> DiffOperator:
    """``D_j`` for the 0-based coordinate index j.

    :raises ValidationError: If index is not in ``[0, dimension)``.
    """
    dimension = _validate.integer_arg(dimension, 'dimension', minimum=1)
    if isinstance(index, bool) or not isinstance(index, int) or not 0 <= index < dimension:
        raise ValidationError(
            f'index must lie in [0, {dimension - 1}], got {index!r}', tag=MetivierErrorTag.INDEX_OUT_OF_RANGE)
    alpha = tuple(1 if i == index else 0 for i in range(dimension))
    return DiffOperator(dimension, ((alpha, 1.0),))


def laplacian(dimension: int) -> DiffOperator:
    """``sum_j D_j^2``, whose symbol is ``|xi|^2``."""
    dimension = _validate.integer_arg(dimension, 'dimension', minimum=1)
    return DiffOperator(dimension, tuple((tuple(2 if i == j else 0 for i in range(dimension)), 1.0)
                                         for j in range(dimension)))


def _invalid(msg: str) -> ValidationError:
    return ValidationError(msg, tag=MetivierErrorTag.INVALID_DESCRIPTOR)


def _coefficient_from_record(value: Any, dimension: int) -> Polynomial:
    if isinstance(value, Real) and not isinstance(value, bool):
        return Polynomial.constant(dimension, float(value))
    if not isinstance(value, list):
        raise _invalid(f'coefficient must be a number or a list of monomials, got {value!r}')
    monomials = []
    for monomial in value:
        if not isinstance(monomial, Mapping) or 'beta' not in monomial or 'c' not in monomial:
            raise _invalid(f'monomial records need "beta" and "c", got {monomial!r}')
        monomials.append((monomial['beta'], monomial['c']))
    return Polynomial(dimension, tuple(monomials))


def operator_from_descriptor(record: Mapping[str, Any]) -> DiffOperator:
    """Build an operator from its JSON record.

    Two shapes are accepted::

        {"dimension": 2, "terms": [{"alpha": [1, 0], "coefficient": [{"beta": [0, 1], "c": 1.0}]}]}
        {"builtin": "derivative", "index": 0, "dimension": 2}   # or "laplacian"

    A numeric ``coefficient`` is a constant.

    :raises ValidationError: If the record is malformed.
    """
    if not isinstance(record, Mapping):
        raise _invalid(f'operator descriptor must be an object, got {type(record).__name__}')
    if 'dimension' not in record:
        raise _invalid('operator descriptor needs "dimension"')
    dimension = record['dimension']
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise _invalid(f'dimension must be a positive integer, got {dimension!r}')
    builtin = record.get('builtin')
    if builtin is not None:
        match builtin:
            case 'derivative':
                return derivative_operator(dimension, record.get('index', 0))
            case 'laplacian':
                return laplacian(dimension)
        raise _invalid(f'unknown builtin operator {builtin!r}')
    terms = record.get('terms')
    if not isinstance(terms, list) or not terms:
        raise _invalid('operator descriptor needs a non-empty "terms" list')
    pairs = []
    for term in terms:
        if not isinstance(term, Mapping) or 'alpha' not in term or 'coefficient' not in term:
            raise _invalid(f'operator terms need "alpha" and "coefficient", got {term!r}')
        pairs.append((term['alpha'], _coefficient_from_record(term['coefficient'], dimension)))
    return DiffOperator(dimension, tuple(pairs))


def operator_to_descriptor(operator: DiffOperator) -> dict[str, Any]:
    """The ``terms`` record of an operator; :func:`operator_from_descriptor` reads it back."""
    return {
        'dimension': operator.dimension,
        'terms': [{'alpha': list(alpha),
                   'coefficient': [{'beta': list(beta), 'c': c} for beta, c in coefficient.terms]}
                  for alpha, coefficient in operator.terms],
    }


def coefficient_bound(operator: DiffOperator, x0: ArrayLike, xi0: ArrayLike, delta: float,
                      l_seq: WeightSequence) -> float:
    """A constant ``C_P`` with ``|D_x^nu d_xi^alpha p(x, t xi0)| <= C_P^(|nu|+1) L_|nu| t^(d-|alpha|)``.

    The bound holds for ``|x - x0| <= 2 delta``, ``t >= 1`` and all ``nu``; derivatives of order
    above the coefficient degree vanish.

    :param DiffOperator operator: The operator P.
    :param ArrayLike x0: Centre of the ball.
    :param ArrayLike xi0: The direction.
    :param float delta: Half the ball radius.
    :param WeightSequence l_seq: The sequence L.
    :return float: ``C_P``, 0 for an operator whose symbol vanishes along xi0 on the ball.
    """
    center = _validate.vector_arg(x0, 'x0', operator.dimension)
    direction = np.abs(_validate.vector_arg(xi0, 'xi0', operator.dimension))
    delta = _validate.positive_real_arg(delta, 'delta')
    degree = operator.degree
    if degree > l_seq.truncation:
        raise ValidationError(
            f'coefficient degree {degree} exceeds the truncation of L', tag=MetivierErrorTag.TRUNCATION_MISMATCH)
    log_bound = -math.inf
    alphas = list(multi_indices(operator.dimension, operator.order))
    for alpha, nu in cartesian(alphas, multi_indices(operator.dimension, degree)):
        total = 0.0
        for gamma, coefficient in operator.terms:
            if any(g < a for g, a in zip(gamma, alpha)):
                continue
            weight = _falling(gamma, alpha) * float(np.prod(direction ** np.subtract(gamma, alpha, dtype=float)))
            total += weight * coefficient.derivative(nu).abs_bound(center, 2.0 * delta)
        if total > 0.0:
            order = sum(nu)
            log_bound = max(log_bound, (math.log(total) - float(l_seq.log_m[order])) / (order + 1))
    return math.exp(log_bound) if log_bound > -math.inf else 0.0
