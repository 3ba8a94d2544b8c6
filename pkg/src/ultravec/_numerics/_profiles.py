"""Smooth profiles that can be expanded in Taylor jets.

A profile evaluates itself on any :class:`JetAlgebra` given jets of its variables. This lets
one description serve plain evaluation (order-0 jets), derivatives along a line
(:func:`taylor_derivatives`) and full multivariate jets.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .._doc_utils import enum_docstrings
from .._exceptions import ValidationError
from .._immutable import Immutable, frozen_array
from ._error_tags import NumericsErrorTag
from ._jets import JetAlgebra, UnivariateJets

__all__ = (
    'BumpProfile',
    'ExpressionProfile',
    'Profile',
    'ProfileOp',
    'TaylorJet',
    'taylor_derivatives',
)

_SATURATION = 700.0
"""Beyond this exponent the bump is 0 or 1 to double precision together with all derivatives."""


class Profile(Protocol):
    """Anything :func:`taylor_derivatives` can expand."""

    @property
    def nvars(self) -> int: ...

    def evaluate(self, algebra: JetAlgebra, variables: Sequence[NDArray]) -> NDArray: ...


def _evaluate_points(profile: Profile, points: ArrayLike) -> NDArray:
    coords = np.asarray(points, dtype=float)
    if coords.shape[-1] != profile.nvars:
        raise ValidationError(
            f'points must have {profile.nvars} coordinates, got shape {coords.shape}',
            tag=NumericsErrorTag.DIMENSION_MISMATCH)
    algebra = UnivariateJets(0)
    variables = [algebra.constant(coords[..., i]) for i in range(profile.nvars)]
    return algebra.value(profile.evaluate(algebra, variables))


@enum_docstrings
class ProfileOp(str, Enum):
    """Node kinds of an expression profile."""

    VAR = "var"
    """A coordinate."""

    CONST = "const"
    """A real constant."""

    ADD = "add"
    """Sum of two nodes."""

    MUL = "mul"
    """Product of two nodes."""

    EXP = "exp"
    """Exponential of a node."""

    RECIP = "recip"
    """Reciprocal of a node."""

    POWER = "power"
    """Real power of a positive node."""


@dataclass(frozen=True)
class ExpressionProfile(Immutable):
    """An expression tree built from coordinates and constants.

    Build trees with :meth:`var`, :meth:`const`, ``+``, ``*``, ``-`` and the methods
    :meth:`exp`, :meth:`recip` and :meth:`power`.
    """
    op: ProfileOp
    args: tuple['ExpressionProfile', ...] = ()
    value: float = 0.0

    @classmethod
    def var(cls, index: int) -> 'ExpressionProfile':
        if index < 0:
            raise ValidationError(
                f'variable index must be non-negative, got {index}', tag=NumericsErrorTag.INVALID_PROFILE)
        return cls(ProfileOp.VAR, (), float(index))

    @classmethod
    def const(cls, value: float) -> 'ExpressionProfile':
        return cls(ProfileOp.CONST, (), float(value))

    @staticmethod
    def _wrap(other: 'ExpressionProfile | float') -> 'ExpressionProfile':
        return other if isinstance(other, ExpressionProfile) else ExpressionProfile.const(other)

    def __add__(self, other: 'ExpressionProfile | float') -> 'ExpressionProfile':
        return ExpressionProfile(ProfileOp.ADD, (self, self._wrap(other)))

    __radd__ = __add__

    def __mul__(self, other: 'ExpressionProfile | float') -> 'ExpressionProfile':
        return ExpressionProfile(ProfileOp.MUL, (self, self._wrap(other)))

    __rmul__ = __mul__

    def __neg__(self) -> 'ExpressionProfile':
        return self * -1.0

    def __sub__(self, other: 'ExpressionProfile | float') -> 'ExpressionProfile':
        return self + (-self._wrap(other))

    def exp(self) -> 'ExpressionProfile':
        return ExpressionProfile(ProfileOp.EXP, (self,))

    def recip(self) -> 'ExpressionProfile':
        return ExpressionProfile(ProfileOp.RECIP, (self,))

    def power(self, exponent: float) -> 'ExpressionProfile':
        return ExpressionProfile(ProfileOp.POWER, (self,), float(exponent))

    @property
    def nvars(self) -> int:
        """One more than the largest variable index used."""
        if self.op is ProfileOp.VAR:
            return int(self.value) + 1
        return max((arg.nvars for arg in self.args), default=0)

    def evaluate(self, algebra: JetAlgebra, variables: Sequence[NDArray]) -> NDArray:
        """Jet of the expression given jets of the coordinates."""
        match self.op:
            case ProfileOp.VAR:
                return variables[int(self.value)]
            case ProfileOp.CONST:
                return algebra.constant(np.full(variables[0].shape[:-1], self.value)) if variables \
                    else algebra.constant(self.value)
            case ProfileOp.ADD:
                return self.args[0].evaluate(algebra, variables) + self.args[1].evaluate(algebra, variables)
            case ProfileOp.MUL:
                return algebra.mul(self.args[0].evaluate(algebra, variables), self.args[1].evaluate(algebra, variables))
            case ProfileOp.EXP:
                return algebra.exp(self.args[0].evaluate(algebra, variables))
            case ProfileOp.RECIP:
                return algebra.reciprocal(self.args[0].evaluate(algebra, variables))
            case ProfileOp.POWER:
                return algebra.power(self.args[0].evaluate(algebra, variables), self.value)
        raise ValidationError(f'unknown profile node {self.op!r}', tag=NumericsErrorTag.INVALID_PROFILE)

    def __call__(self, points: ArrayLike) -> NDArray:
        """Plain values at points of shape ``(..., nvars)``."""
        return _evaluate_points(self, points)


@dataclass(frozen=True)
class BumpProfile(Immutable):
    """Radial cut-off equal to 1 on ``|y| <= delta`` and 0 on ``|y| >= 2*delta``.

    In the band ``delta < r < 2*delta`` the profile is ``1 / (1 + e^E)`` with
    ``E = (2*delta - r)^-a - (r - delta)^-a``. It is flat at both edges, and its derivatives
    grow like a Gevrey sequence of order ``1 + 1/a``.

    :param float delta: Inner radius.
    :param float flatness: The exponent ``a > 0``.
    :param int dimension: Number of variables.
    """
    delta: float
    flatness: float
    dimension: int

    def __post_init__(self) -> None:
        if not (self.delta > 0 and self.flatness > 0 and self.dimension >= 1):
            raise ValidationError(
                f'bump needs delta > 0, flatness > 0 and dimension >= 1, got '
                f'({self.delta}, {self.flatness}, {self.dimension})', tag=NumericsErrorTag.INVALID_PROFILE)

    @property
    def nvars(self) -> int:
        return self.dimension

    def radial(self, algebra: JetAlgebra, radius: NDArray) -> NDArray:
        """Jet of the radial profile given jets of the radius (batch of arbitrary shape)."""
        r0 = radius[..., 0]
        out = np.zeros(radius.shape)
        out[r0 <= self.delta, 0] = 1.0
        band = (r0 > self.delta) & (r0 < 2.0 * self.delta)
        if not np.any(band):
            return out
        r = radius[band]
        with np.errstate(all="ignore"):
            value = self._band_jets(algebra, r)
        out[band] = value
        return out

    def _band_jets(self, algebra: JetAlgebra, r: NDArray) -> NDArray:
        inner = algebra.constant(np.full(r.shape[:-1], 2.0 * self.delta)) - r
        outer = r - algebra.constant(np.full(r.shape[:-1], self.delta))
        exponent = algebra.power(inner, -self.flatness) - algebra.power(outer, -self.flatness)
        e0 = exponent[..., 0]
        lower = e0 <= 0.0
        sign = np.where(lower, 1.0, -1.0)
        weight = algebra.exp(exponent * sign[..., None])
        recip = algebra.reciprocal(weight + algebra.constant(np.ones(e0.shape)))
        value = np.where(lower[..., None], recip, algebra.mul(weight, recip))
        value[(e0 < -_SATURATION) | (e0 > _SATURATION)] = 0.0
        value[e0 < -_SATURATION, 0] = 1.0
        return value

    def evaluate(self, algebra: JetAlgebra, variables: Sequence[NDArray]) -> NDArray:
        squared = algebra.mul(variables[0], variables[0])
        for var in variables[1:]:
            squared = squared + algebra.mul(var, var)
        r0 = np.sqrt(np.maximum(squared[..., 0], 0.0))
        radius = np.zeros(squared.shape)
        radius[..., 0] = r0
        moving = r0 > self.delta
        if np.any(moving):
            radius[moving] = algebra.power(squared[moving], 0.5)
        return self.radial(algebra, radius)

    def __call__(self, points: ArrayLike) -> NDArray:
        """Plain values at points of shape ``(..., dimension)``."""
        return _evaluate_points(self, points)


@dataclass(frozen=True)
class TaylorJet(Immutable):
    """Derivatives of a profile along the line ``center + s*direction`` at ``s = 0``."""
    center: tuple[float, ...]
    direction: tuple[float, ...]
    order: int
    coefficients: NDArray = field(repr=False)
    """Taylor coefficients ``f_n / n!`` (read-only)."""

    def derivative(self, n: int) -> float:
        """``(direction . grad)^n f(center)``."""
        return float(self.coefficients[n]) * math.factorial(n)


def taylor_derivatives(profile: Profile, center: ArrayLike, direction: ArrayLike, order: int) -> TaylorJet:
    """Directional derivatives of a profile up to order.

    :param Profile profile: An expression or bump profile.
    :param ArrayLike center: Expansion point.
    :param ArrayLike direction: Direction vector (not normalized).
    :param int order: Highest derivative.
    :return TaylorJet: The jet.
    :raises ValidationError: If center or direction have the wrong length.
    """
    c = np.asarray(center, dtype=float)
    v = np.asarray(direction, dtype=float)
    if c.shape != (profile.nvars,) or v.shape != (profile.nvars,):
        raise ValidationError(
            f'center and direction must have {profile.nvars} components', tag=NumericsErrorTag.DIMENSION_MISMATCH)
    algebra = UnivariateJets(order)
    variables = [algebra.variable(c[i], v[i]) for i in range(profile.nvars)]
    coefficients = profile.evaluate(algebra, variables)
    return TaylorJet(tuple(c.tolist()), tuple(v.tolist()), order, frozen_array(coefficients))
