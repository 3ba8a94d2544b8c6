"""Regimes, parameter selection and the immutable instance of the construction.

Three regimes fix how the sequences ``L, V, N, M~`` are derived from M:

* ``abstract`` takes L, V, N and tau from the caller and checks the hypotheses on them;
* ``gammaInfinite`` (``gamma(M) = inf``) uses ``M~ = M^q, L = M^(q(1-sigma)), V = M^(q sigma), N = M^(q rho)``;
* ``gammaFinite`` (``1 < gamma(M) < inf``) uses ``T = M^(1/gamma)`` and powers of T.

Parameters left out by the caller are the midpoints of their admissible intervals.
"""
import math
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, NamedTuple, Optional, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .. import _validate
from .._assocweight import aux_equivalence
from .._constants import BUMP_MAX_ORDER, DEFAULT_SEED
from .._doc_utils import enum_docstrings
from .._exceptions import InfeasibleParameters, ValidationError
from .._immutable import Immutable, frozen_array
from .._kernel import FlatKernel
from .._log import log
from .._weightseq import (
    OrderRelation,
    Quasianalyticity,
    Verdict,
    WeightSequence,
    gamma_index,
    order_relation,
    power,
    product,
    quasianalyticity_sum,
    sequence_to_descriptor,
)
from ._bump import BumpFunction, build_bump
from ._error_tags import MetivierErrorTag
from ._nonelliptic import find_nonelliptic_point, require_nonelliptic
from ._operator import DiffOperator, coefficient_bound, operator_to_descriptor

__all__ = (
    'AbstractRegime',
    'GammaFiniteRegime',
    'GammaInfiniteRegime',
    'MetivierInstance',
    'Regime',
    'RegimeKind',
    'RegimeParameters',
    'instance_to_descriptor',
    'resolve_regime',
    'select_parameters',
)


@enum_docstrings
class RegimeKind(str, Enum):
    """How the auxiliary sequences are derived."""

    ABSTRACT = "abstract"
    """Caller-supplied L, V, N and tau."""

    GAMMA_INFINITE = "gammaInfinite"
    """Powers of M with parameters (q, sigma, rho)."""

    GAMMA_FINITE = "gammaFinite"
    """Powers of ``T = M^(1/gamma)`` with parameters (rho, gamma0, gamma~)."""


@dataclass(frozen=True)
class AbstractRegime(Immutable):
    """Caller-supplied sequences; eps defaults to the midpoint of ``(d(1 - 1/tau), 1/2)``."""
    tau: float
    l_seq: WeightSequence
    v_seq: WeightSequence
    n_seq: WeightSequence
    eps: Optional[float] = None
    kind: RegimeKind = field(default=RegimeKind.ABSTRACT, init=False)


@dataclass(frozen=True)
class GammaInfiniteRegime(Immutable):
    """``0 < q, sigma < 1``, ``1 < rho < 2d sigma/(2d-1)`` and ``rho q > 1``."""
    q: Optional[float] = None
    sigma: Optional[float] = None
    rho: Optional[float] = None
    kind: RegimeKind = field(default=RegimeKind.GAMMA_INFINITE, init=False)


@dataclass(frozen=True)
class GammaFiniteRegime(Immutable):
    """``rho gamma < gamma0 < gamma~ < gamma`` and ``(gamma - gamma0)/(2d) > gamma - gamma~``.

    ``rho`` here is the power parameter with ``1 < 1/rho < gamma(M)``.
    """
    rho: Optional[float] = None
    gamma0: Optional[float] = None
    gamma_tilde: Optional[float] = None
    kind: RegimeKind = field(default=RegimeKind.GAMMA_FINITE, init=False)


Regime = Union[AbstractRegime, GammaInfiniteRegime, GammaFiniteRegime]


class RegimeParameters(NamedTuple):
    """The resolved parameters and sequences of a regime."""
    kind: RegimeKind
    """The regime."""
    values: dict[str, float]
    """Named parameters (q, sigma, rho, gamma, gamma0, gammaTilde, gammaPrime as applicable)."""
    eps: float
    """The exponent epsilon."""
    tau: float
    """The exponent with ``N <= A V^tau``."""
    m_tilde: WeightSequence
    """M~, the sequence of the vector estimate."""
    l_seq: WeightSequence
    """L, the class of the cut-off."""
    v_seq: WeightSequence
    """V."""
    n_seq: WeightSequence
    """N, the sequence of the kernel."""


def _infeasible(text: str, inequality: str) -> InfeasibleParameters:
    return InfeasibleParameters(text, tag=MetivierErrorTag.REGIME_CONSTRAINT, inequality=inequality)


def _require(condition: bool, text: str, inequality: str) -> None:
    if not condition:
        raise _infeasible(text, inequality)


def _eps_window(order: int, tau: float) -> tuple[float, float]:
    return order * (1.0 - 1.0 / tau), 0.5


def _pick_eps(order: int, tau: float, eps: Optional[float]) -> float:
    lower, upper = _eps_window(order, tau)
    if eps is None:
        return 0.5 * (lower + upper)
    eps = _validate.real_arg(eps, 'eps')
    if not lower < eps < upper:
        raise ValidationError(
            f'eps must lie in ({lower:.6g}, {upper}) for tau={tau:.6g} and d={order}, got {eps}',
            tag=MetivierErrorTag.EPS_OUT_OF_RANGE)
    return eps


def _check(verdict: Verdict, text: str, inequality: str) -> None:
    if verdict is Verdict.FAILS:
        raise _infeasible(text, inequality)
    if verdict is Verdict.INCONCLUSIVE:
        log.warning("resolve_regime: %s is inconclusive on the table", inequality)


def _resolve_abstract(m_seq: WeightSequence, order: int, regime: AbstractRegime) -> RegimeParameters:
    tau = _validate.real_arg(regime.tau, 'tau')
    upper = 2.0 * order / (2.0 * order - 1.0)
    _require(1.0 < tau < upper, f'tau={tau} is outside (1, {upper:.6g})', '1 < tau < 2d/(2d-1)')
    sequences = (regime.l_seq, regime.v_seq, regime.n_seq)
    if any(not isinstance(seq, WeightSequence) for seq in sequences):
        raise ValidationError('abstract regime needs WeightSequence L, V and N', tag=MetivierErrorTag.REGIME_CONSTRAINT)
    if any(seq.truncation != m_seq.truncation for seq in sequences):
        raise ValidationError(
            f'L, V and N must share the truncation K={m_seq.truncation} of M', tag=MetivierErrorTag.TRUNCATION_MISMATCH)
    l_seq, v_seq, n_seq = sequences
    _check(aux_equivalence(v_seq, n_seq, tau).dominated, 'N is not dominated by a multiple of V^tau',
           'N <= A V^tau')
    _check(order_relation(product(l_seq, v_seq), m_seq, OrderRelation.PRECEQ).holds, 'L V is not below M',
           'L V preceq M')
    _check(order_relation(v_seq, m_seq, OrderRelation.DOMINATED_BY).holds, 'V exceeds M', 'V <= M')
    _check(order_relation(m_seq, n_seq, OrderRelation.STRICT_PRECEQ).holds, 'M is not strictly below N',
           'M precnapprox N')
    if quasianalyticity_sum(l_seq).verdict is Quasianalyticity.QUASIANALYTIC:
        raise _infeasible('L is quasianalytic', 'L non-quasianalytic')
    try:
        gamma = gamma_index(n_seq).gamma
    except ValidationError as err:
        log.warning("resolve_regime: gamma(N) > 0 not checked (%s)", err)
    else:
        _require(gamma > 0.0, 'gamma(N) vanishes', 'gamma(N) > 0')
    eps = _pick_eps(order, tau, regime.eps)
    return RegimeParameters(RegimeKind.ABSTRACT, {'tau': tau}, eps, tau, m_seq, l_seq, v_seq, n_seq)


def _resolve_gamma_infinite(m_seq: WeightSequence, order: int, regime: GammaInfiniteRegime) -> RegimeParameters:
    _require(gamma_index(m_seq).infinite, 'gamma(M) is finite', 'gamma(M) = inf')
    floor = (2.0 * order - 1.0) / (2.0 * order)
    sigma = regime.sigma
    if sigma is None:
        sigma = 0.9 if 0.9 > floor else 0.5 * (floor + 1.0)
    sigma = _validate.real_arg(sigma, 'sigma')
    _require(floor < sigma < 1.0, f'sigma={sigma} is outside ({floor:.6g}, 1)', '(2d-1)/(2d) < sigma < 1')
    ceiling = 2.0 * order * sigma / (2.0 * order - 1.0)
    rho = regime.rho
    if rho is None:
        rho = 1.5 if 1.5 < ceiling else 0.5 * (1.0 + ceiling)
    rho = _validate.real_arg(rho, 'rho')
    _require(1.0 < rho < ceiling, f'rho={rho} is outside (1, {ceiling:.6g})', '1 < rho < 2d sigma/(2d-1)')
    q = regime.q
    if q is None:
        q = 0.8 if 0.8 * rho > 1.0 else 0.5 * (1.0 / rho + 1.0)
    q = _validate.real_arg(q, 'q')
    _require(0.0 < q < 1.0, f'q={q} is outside (0, 1)', '0 < q < 1')
    _require(rho * q > 1.0, f'rho*q={rho * q:.6g} is not above 1', '1 < rho q')
    tau = rho / sigma
    eps = _pick_eps(order, tau, None)
    values = {'q': q, 'sigma': sigma, 'rho': rho}
    return RegimeParameters(RegimeKind.GAMMA_INFINITE, values, eps, tau, power(m_seq, q),
                            power(m_seq, q * (1.0 - sigma)), power(m_seq, q * sigma), power(m_seq, q * rho))


def _resolve_gamma_finite(m_seq: WeightSequence, order: int, regime: GammaFiniteRegime) -> RegimeParameters:
    gamma = gamma_index(m_seq).gamma
    _require(1.0 < gamma < math.inf, f'gamma(M)={gamma} admits no rho', '1 < 1/rho < gamma(M)')
    rho = regime.rho if regime.rho is not None else 0.5 * (1.0 / gamma + 1.0)
    rho = _validate.real_arg(rho, 'rho')
    _require(1.0 < 1.0 / rho < gamma, f'1/rho={1.0 / rho:.6g} is outside (1, {gamma:.6g})', '1 < 1/rho < gamma(M)')
    gamma0 = regime.gamma0 if regime.gamma0 is not None else 0.5 * (rho * gamma + gamma)
    gamma0 = _validate.real_arg(gamma0, 'gamma0')
    _require(rho * gamma < gamma0 < gamma, f'gamma0={gamma0} is outside ({rho * gamma:.6g}, {gamma:.6g})',
             'rho gamma < gamma0 < gamma')
    floor = max(gamma0, gamma - (gamma - gamma0) / (2.0 * order))
    gamma_tilde = regime.gamma_tilde if regime.gamma_tilde is not None else 0.5 * (floor + gamma)
    gamma_tilde = _validate.real_arg(gamma_tilde, 'gamma_tilde')
    _require(gamma0 < gamma_tilde < gamma, f'gamma~={gamma_tilde} is outside ({gamma0}, {gamma:.6g})',
             'gamma0 < gamma~ < gamma')
    _require((gamma - gamma0) / (2.0 * order) > gamma - gamma_tilde,
             f'(gamma-gamma0)/(2d)={(gamma - gamma0) / (2.0 * order):.6g} is not above gamma-gamma~',
             '(gamma - gamma0)/(2d) > gamma - gamma~')
    eps = order * (gamma_tilde - gamma0) / (2.0 * order * gamma_tilde - gamma0)
    gamma_prime = order * gamma_tilde / (order - eps)
    t_seq = power(m_seq, 1.0 / gamma)
    values = {'rho': rho, 'gamma': gamma, 'gamma0': gamma0, 'gammaTilde': gamma_tilde, 'gammaPrime': gamma_prime}
    return RegimeParameters(RegimeKind.GAMMA_FINITE, values, eps, gamma_prime / (gamma_tilde - gamma0),
                            power(t_seq, gamma_tilde), power(t_seq, gamma0), power(t_seq, gamma_tilde - gamma0),
                            power(t_seq, gamma_prime))


def resolve_regime(m_seq: WeightSequence, order: int, regime: Regime) -> RegimeParameters:
    """Derive and check the parameters and sequences of a regime.

    :param WeightSequence m_seq: The sequence M.
    :param int order: The operator order d.
    :param Regime regime: The regime and any caller-fixed parameters.
    :return RegimeParameters: The resolved parameters.
    :raises InfeasibleParameters: Naming the first constraint that fails.
    :raises ValidationError: If eps or the sequences are malformed.
    """
    order = _validate.integer_arg(order, 'order', minimum=1)
    match regime:
        case AbstractRegime():
            resolved = _resolve_abstract(m_seq, order, regime)
        case GammaInfiniteRegime():
            resolved = _resolve_gamma_infinite(m_seq, order, regime)
        case GammaFiniteRegime():
            resolved = _resolve_gamma_finite(m_seq, order, regime)
        case _:
            raise ValidationError(f'unknown regime {regime!r}', tag=MetivierErrorTag.REGIME_CONSTRAINT)
    log.debug("resolve_regime: %s with %s, eps=%.6g, tau=%.6g", resolved.kind.value, resolved.values,
              resolved.eps, resolved.tau)
    return resolved


@dataclass(frozen=True, eq=False)
class MetivierInstance(Immutable):
    """Everything the construction of u needs, fixed at creation.

    Symbolic iterates are memoised per ``(k, direction)`` under a lock.
    """
    operator: DiffOperator
    """The operator P."""
    x0: NDArray
    """The non-elliptic point (read-only)."""
    xi0: NDArray
    """The unit covector with ``p_d(x0, xi0) = 0`` (read-only)."""
    delta: float
    """Half the radius of the base ball."""
    m_seq: WeightSequence
    """The sequence M."""
    regime: RegimeParameters
    """Regime, parameters and derived sequences."""
    kernel: FlatKernel
    """The kernel over N."""
    bump: BumpFunction
    """The cut-off over L."""
    c_p: float
    """The coefficient bound of P on the 2 delta-ball."""
    _iterates: dict[tuple[int, Optional[int]], Any] = field(default_factory=dict, init=False, repr=False, compare=False)
    _lock: Any = field(default_factory=threading.RLock, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        x0, xi0 = require_nonelliptic(self.operator, self.x0, self.xi0)
        object.__setattr__(self, 'x0', frozen_array(x0))
        object.__setattr__(self, 'xi0', frozen_array(xi0))
        _validate.positive_real_arg(self.delta, 'delta')
        if not 0.0 < self.regime.eps < 1.0:
            raise ValidationError(
                f'eps must lie in (0, 1), got {self.regime.eps}', tag=MetivierErrorTag.EPS_OUT_OF_RANGE)
        if self.kernel.seq is not self.regime.n_seq:
            raise ValidationError('the kernel must be built over N', tag=MetivierErrorTag.TRUNCATION_MISMATCH)
        if self.bump.dimension != self.operator.dimension:
            raise ValidationError(
                f'cut-off dimension {self.bump.dimension} differs from n={self.operator.dimension}',
                tag=MetivierErrorTag.GRID_DIMENSION)

    @property
    def dimension(self) -> int:
        """n."""
        return self.operator.dimension

    @property
    def order(self) -> int:
        """d."""
        return self.operator.order

    @property
    def eps(self) -> float:
        """epsilon."""
        return self.regime.eps

    @property
    def tau(self) -> float:
        """tau."""
        return self.regime.tau

    @property
    def l_seq(self) -> WeightSequence:
        """L."""
        return self.regime.l_seq

    @property
    def v_seq(self) -> WeightSequence:
        """V."""
        return self.regime.v_seq

    @property
    def n_seq(self) -> WeightSequence:
        """N."""
        return self.regime.n_seq

    @property
    def m_tilde(self) -> WeightSequence:
        """M~."""
        return self.regime.m_tilde

    def __repr__(self) -> str:
        return (f'MetivierInstance({self.operator!r}, regime={self.regime.kind.value}, eps={self.eps:.6g}, '
                f'M={self.m_seq})')


def select_parameters(m_seq: WeightSequence,
                      operator: DiffOperator,
                      regime: Regime,
                      *,
                      x0: Optional[ArrayLike] = None,
                      xi0: Optional[ArrayLike] = None,
                      delta: float = 1.0,
                      flatness: Optional[float] = None,
                      box: Optional[tuple[ArrayLike, ArrayLike]] = None,
                      max_order: int = BUMP_MAX_ORDER,
                      seed: int = DEFAULT_SEED) -> MetivierInstance:
    """Build a :class:`MetivierInstance`.

    Without ``xi0`` the non-elliptic point is searched for, on ``box`` or at the fixed ``x0``
    when one is given. Then the regime is resolved, ``C_P`` is computed on the ``2 delta``-ball
    and the cut-off is fitted against L with ``h0 >= 2 C_P``.

    :param WeightSequence m_seq: The sequence M.
    :param DiffOperator operator: The operator P.
    :param Regime regime: The regime.
    :param x0: The point; default from the search, or the origin when only xi0 is given.
    :param xi0: The unit covector.
    :param float delta: Half the radius of the base ball.
    :param float | None flatness: The cut-off exponent a.
    :param tuple | None box: Search box for the non-elliptic point.
    :param int max_order: Highest fitted derivative order of the cut-off.
    :param int seed: Seed of the point search.
    :return MetivierInstance: The instance.
    :raises InfeasibleParameters: If no non-elliptic point is found or a regime constraint fails.
    :raises ValidationError: If the given point is not non-elliptic or the cut-off fit fails.
    """
    if not isinstance(operator, DiffOperator):
        raise ValidationError(
            f'operator must be a DiffOperator, got {type(operator).__name__}', tag=MetivierErrorTag.INVALID_OPERATOR)
    if not isinstance(m_seq, WeightSequence):
        raise ValidationError(
            f'm_seq must be a WeightSequence, got {type(m_seq).__name__}', tag=MetivierErrorTag.REGIME_CONSTRAINT)
    delta = _validate.positive_real_arg(delta, 'delta')
    if xi0 is None:
        if x0 is not None:
            fixed = _validate.vector_arg(x0, 'x0', operator.dimension)
            box = (fixed, fixed)
        point = find_nonelliptic_point(operator, box, seed=seed)
        if not point.found:
            raise InfeasibleParameters(
                f'no zero of the principal symbol found (residual {point.residual:.3g})',
                tag=MetivierErrorTag.NO_NONELLIPTIC_POINT, inequality='p_d(x0, xi0) = 0')
        x0, xi0 = point.x0, point.xi0
    elif x0 is None:
        x0 = np.zeros(operator.dimension)
    x0, xi0 = require_nonelliptic(operator, x0, xi0)
    resolved = resolve_regime(m_seq, operator.order, regime)
    c_p = coefficient_bound(operator, x0, xi0, delta, resolved.l_seq)
    bump = build_bump(resolved.l_seq, delta, flatness, dimension=operator.dimension, max_order=max_order,
                      operator_bound=c_p)
    return MetivierInstance(operator, x0, xi0, delta, m_seq, resolved, FlatKernel(resolved.n_seq), bump, c_p)


def _real(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def instance_to_descriptor(inst: MetivierInstance) -> dict[str, Any]:
    """The JSON record of an instance: parameters, sequence descriptors and fitted constants."""
    regime = inst.regime
    return {
        'operator': operator_to_descriptor(inst.operator),
        'x0': [float(v) for v in inst.x0],
        'xi0': [float(v) for v in inst.xi0],
        'delta': inst.delta,
        'eps': regime.eps,
        'tau': regime.tau,
        'regime': {'kind': regime.kind.value, **regime.values},
        'sequences': {
            'M': sequence_to_descriptor(inst.m_seq),
            'Mtilde': sequence_to_descriptor(regime.m_tilde),
            'L': sequence_to_descriptor(regime.l_seq),
            'V': sequence_to_descriptor(regime.v_seq),
            'N': sequence_to_descriptor(regime.n_seq),
        },
        'bump': {
            'flatness': inst.bump.flatness,
            'logC0': _real(inst.bump.log_c0),
            'logH0': _real(inst.bump.log_h0),
            'maxOrder': inst.bump.max_order,
            'fitDrift': _real(inst.bump.fit.drift),
        },
        'cP': inst.c_p,
    }
