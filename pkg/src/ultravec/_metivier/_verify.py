"""Numerical witnesses for the estimates behind the construction.

Every check returns a report with the fitted constants, the margins and a :class:`Verdict`;
none raises on a failed inequality.
"""
import math
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .. import _validate
from .._constants import (
    CELL_T_POINTS,
    DIVERGENCE_CONSTANTS,
    ENVELOPE_T_MAX,
    ENVELOPE_Y_POINTS,
    GROWTH_DRIFT_TOL,
    SYMBOLIC_REL_TOL,
)
from .._doc_utils import enum_docstrings
from .._exceptions import ValidationError
from .._kernel import moment, verify_moment_sandwich
from .._log import log
from .._numerics import (
    GrowthFit,
    LogValue,
    TailTrend,
    Trend,
    fit_growth,
    integrate_piecewise_power,
    multi_indices,
    tail_trend,
)
from .._weightseq import OrderRelation, OrderVerdict, Verdict, WeightSequence, order_relation
from ._construction import XGrid, directional_derivative_at_center, evaluate_iterates
from ._error_tags import MetivierErrorTag
from ._instance import MetivierInstance
from ._iterates import common_axis, cutoff_table, differentiate_terms, iterate_terms

__all__ = (
    'CrossingIndex',
    'DivergenceWitness',
    'DominanceReport',
    'EnvelopeKind',
    'EnvelopeReport',
    'LastEstimate',
    'LowerBoundChain',
    'OptimalityReport',
    'VectorGrowth',
    'divergence_witness',
    'envelope_dominance',
    'envelope_log',
    'last_estimate_fit',
    'lower_bound_chain',
    'optimality_report',
    'verify_Qk_envelope',
    'verify_last_estimate',
    'verify_vector_growth',
)

_ENVELOPE_T_POINTS = 24
_BASE_MARGIN_TOL = 1e-10
_DOMINANCE_SLACK = 1e-9


@enum_docstrings
class EnvelopeKind(str, Enum):
    """The two envelopes bounding the symbolic iterates."""
    LAMBDA = "lambda"
    """``t^((d-eps)k) L_|nu| + t^(eps k (2d-1)) L_(|nu|+dk)``, for iterates of P."""
    THETA = "theta"
    """``t^k L_|nu| + t^(eps k) L_(|nu|+k)``, for iterates of a constant-coefficient ``D_j``."""


def envelope_log(kind: EnvelopeKind, l_seq: WeightSequence, eps: float, order: int, k: int, nu_abs: int,
                 log_t: NDArray) -> NDArray:
    """log of the envelope at ``(k, |nu|)`` for each ``log t``; order is ignored by THETA.

    :raises ValidationError: If ``|nu| + dk`` (``|nu| + k`` for THETA) exceeds the truncation of L.
    """
    step = order if kind is EnvelopeKind.LAMBDA else 1
    top = nu_abs + step * k
    if top > l_seq.truncation:
        raise ValidationError(
            f'envelope needs L up to index {top}, K={l_seq.truncation}', tag=MetivierErrorTag.TRUNCATION_MISMATCH)
    log_l = l_seq.log_m
    if kind is EnvelopeKind.LAMBDA:
        first = (order - eps) * k * log_t + log_l[nu_abs]
        second = eps * k * (2 * order - 1) * log_t + log_l[top]
    else:
        first = k * log_t + log_l[nu_abs]
        second = eps * k * log_t + log_l[top]
    return np.logaddexp(first, second)


class EnvelopeReport(NamedTuple):
    """Result of :func:`verify_Qk_envelope`."""
    kind: EnvelopeKind
    """The envelope."""
    direction: Optional[int]
    """The coordinate j of the THETA check; None for LAMBDA."""
    nus: tuple[tuple[int, ...], ...]
    """The derivative multi-indices, columns of the tables."""
    log_lhs: NDArray
    """``log |D^nu Q_k|`` at the binding sample, shape ``(kmax + 1, len(nus))``."""
    log_envelope: NDArray
    """log of the A-free right side at the binding sample."""
    residuals: NDArray
    """Largest ``log lhs - log rhs`` over the samples; ``-inf`` where the left side vanishes."""
    log_a: float
    """The fitted ``log A = max_(k >= 1) residual_k / k`` (0 when every residual is non-positive)."""
    base_margin: float
    """The k = 0 residual, the cut-off estimate on this grid."""
    drift: float
    """``residual_kmax / kmax`` minus the largest earlier quotient."""
    verdict: Verdict
    """HOLDS when A is finite, the k = 0 residual is non-positive and the drift is within the growth tolerance.

    A positive k = 0 residual FAILS since ``A^0 = 1``.
    """
    t_range: tuple[float, float]
    """First and last t."""
    samples: int
    """Number of ``(x, t)`` samples."""


def _envelope_samples(inst: MetivierInstance, t_max: float, t_points: int) -> tuple[NDArray, NDArray]:
    ts = np.geomspace(1.0, t_max, t_points)
    radii = np.concatenate([[0.0, 0.5 * inst.delta],
                            inst.delta * (1.0 + np.linspace(0.05, 0.95, ENVELOPE_Y_POINTS - 2))])
    directions = [inst.xi0]
    if inst.dimension > 1:
        seed = np.eye(inst.dimension)[int(np.argmin(np.abs(inst.xi0)))]
        other = seed - np.dot(seed, inst.xi0) * inst.xi0
        directions.append(other / np.linalg.norm(other))
    offsets = np.concatenate([radii[:, None] * direction for direction in directions])
    xs = inst.x0 + (ts[:, None, None] ** -inst.eps) * offsets[None]
    return xs.reshape(-1, inst.dimension), np.repeat(ts, offsets.shape[0])


def _stable_quotient(residuals: NDArray) -> tuple[float, float]:
    """``max_(k >= 1) r_k / k`` and the drift of the last quotient over the earlier maximum."""
    quotients = np.array([residuals[k] / k for k in range(1, residuals.size)])
    finite = quotients[np.isfinite(quotients)]
    if np.any(quotients == math.inf):
        return math.inf, math.inf
    log_a = max(0.0, float(finite.max())) if finite.size else 0.0
    last = quotients[-1]
    earlier = quotients[:-1][np.isfinite(quotients[:-1])]
    if not math.isfinite(last) or not earlier.size:
        return log_a, 0.0
    return log_a, float(last - earlier.max())


def verify_Qk_envelope(inst: MetivierInstance,  # pylint: disable=invalid-name
                       kmax: int = 8,
                       nu_max: int = 4,
                       *,
                       kind: EnvelopeKind = EnvelopeKind.LAMBDA,
                       direction: Optional[int] = None,
                       t_max: float = ENVELOPE_T_MAX,
                       t_points: int = _ENVELOPE_T_POINTS) -> EnvelopeReport:
    """Fit the smallest A in ``|D^nu Q_k| <= C0 (2 h0 t^eps)^|nu| A^k Lambda(k, nu)`` on a sample grid.

    With ``kind=THETA`` the iterates of ``D_j`` are checked against
    ``C0 (h0 t^eps)^|nu| A^k Theta(k, nu)`` instead. The samples are ``x = x0 + t^(-eps) y`` with y on
    rays along xi0 (and one perpendicular direction) through the plateau and the band of the cut-off.

    :param MetivierInstance inst: The instance.
    :param int kmax: Largest k, at least 2.
    :param int nu_max: Largest ``|nu|``.
    :param EnvelopeKind kind: The envelope.
    :param int | None direction: The coordinate j, required for THETA.
    :param float t_max: Largest t.
    :param int t_points: Number of geometric t values.
    :return EnvelopeReport: Residual tables, the fitted A and the verdict.
    :raises ValidationError: On bad arguments or when L is too short for the envelope.
    :raises BudgetExceeded: If a symbolic expansion is too large.
    """
    kind = EnvelopeKind(kind)
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=2)
    nu_max = _validate.integer_arg(nu_max, 'nu_max', minimum=0)
    t_max = _validate.real_arg(t_max, 't_max')
    t_points = _validate.integer_arg(t_points, 't_points', minimum=2)
    if kind is EnvelopeKind.THETA and direction is None:
        raise ValidationError('the THETA envelope needs a direction', tag=MetivierErrorTag.INDEX_OUT_OF_RANGE)
    if kind is EnvelopeKind.LAMBDA:
        direction = None
    if t_max <= 1.0:
        raise ValidationError(f't_max must exceed 1, got {t_max}', tag=MetivierErrorTag.INVALID_T_GRID)
    xs, ts = _envelope_samples(inst, t_max, t_points)
    log_t = np.log(ts)
    nus = multi_indices(inst.dimension, nu_max)
    sums = {(k, nu): differentiate_terms(iterate_terms(inst, k, direction), nu)
            for k in range(kmax + 1) for nu in nus}
    order = max(terms.nu_order for terms in sums.values())
    table = cutoff_table(inst.bump, inst.eps, inst.x0, xs, ts, order, common_axis(list(sums.values())))
    scale = math.log(2.0) + inst.bump.log_h0 if kind is EnvelopeKind.LAMBDA else inst.bump.log_h0
    shape = (kmax + 1, len(nus))
    log_lhs = np.full(shape, -math.inf)
    log_rhs = np.full(shape, -math.inf)
    residuals = np.full(shape, -math.inf)
    for (k, nu), terms in sums.items():
        column = nus.index(nu)
        nu_abs = sum(nu)
        with np.errstate(divide='ignore'):
            lhs = np.log(np.abs(terms.evaluate(xs, ts, table=table)))
        rhs = (inst.bump.log_c0 + nu_abs * (scale + inst.eps * log_t)
               + envelope_log(kind, inst.l_seq, inst.eps, inst.order, k, nu_abs, log_t))
        gap = lhs - rhs
        worst = int(np.argmax(gap))
        log_lhs[k, column], log_rhs[k, column], residuals[k, column] = lhs[worst], rhs[worst], gap[worst]
    per_k = residuals.max(axis=1)
    log_a, drift = _stable_quotient(per_k)
    base_margin = float(per_k[0])
    if not math.isfinite(log_a) or base_margin > _BASE_MARGIN_TOL:
        verdict = Verdict.FAILS
    elif drift <= GROWTH_DRIFT_TOL:
        verdict = Verdict.HOLDS
    else:
        verdict = Verdict.INCONCLUSIVE
    log.debug("verify_Qk_envelope: %s, log A=%.6g, drift=%.3g", kind.value, log_a, drift)
    return EnvelopeReport(kind, direction, nus, log_lhs, log_rhs, residuals, log_a, base_margin, drift, verdict,
                          (1.0, t_max), int(ts.size))


class DominanceReport(NamedTuple):
    """Result of :func:`envelope_dominance`."""
    kind: EnvelopeKind
    """The envelope."""
    margin: float
    """Largest ``log(lhs) - log(2 envelope(k + 1, nu))``; non-positive when the dominance holds."""
    worst: tuple[int, int, int, float]
    """``(k, |nu|, shift, t)`` of the largest margin."""
    verdict: Verdict
    """HOLDS when the margin is at most zero (up to rounding)."""
    kmax: int
    """Largest k."""
    nu_max: int
    """Largest ``|nu|``."""
    t_range: tuple[float, float]
    """First and last t."""


def envelope_dominance(l_seq: WeightSequence,
                       eps: float,
                       order: int,
                       kmax: int = 8,
                       nu_max: int = 4,
                       t_grid: Optional[Sequence[float] | NDArray] = None,
                       *,
                       kind: EnvelopeKind = EnvelopeKind.LAMBDA) -> DominanceReport:
    """Check the one-step dominance of the envelope on a t-grid.

    For LAMBDA, with ``rho = t^(1 - eps/d)`` and ``R = t^(eps (2 - 1/d))``, every ``m = |alpha| <= d`` must
    satisfy ``rho^(d-m) R^m Lambda(k, |nu| + m) <= 2 Lambda(k + 1, |nu|)`` (m = 0 is
    ``t^(d-eps) Lambda(k, nu)``). For THETA both ``t Theta(k, nu)`` and ``t^eps Theta(k, |nu| + 1)`` must
    stay below ``2 Theta(k + 1, nu)``. Both follow from log-convexity of L.

    :raises ValidationError: If L is too short or the grid is invalid.
    """
    kind = EnvelopeKind(kind)
    eps = _validate.unit_interval_arg(eps, 'eps')
    order = _validate.integer_arg(order, 'order', minimum=1)
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=0)
    nu_max = _validate.integer_arg(nu_max, 'nu_max', minimum=0)
    if t_grid is None:
        ts = np.geomspace(1.0, ENVELOPE_T_MAX, CELL_T_POINTS)
    else:
        ts = np.asarray(t_grid, dtype=float).reshape(-1)
        if ts.size == 0 or not np.all(np.isfinite(ts)) or np.any(ts < 1.0):
            raise ValidationError('t_grid must hold finite values t >= 1', tag=MetivierErrorTag.INVALID_T_GRID)
    log_t = np.log(ts)
    if kind is EnvelopeKind.LAMBDA:
        shifts = [(m, ((1.0 - eps / order) * (order - m) + eps * (2.0 - 1.0 / order) * m) * log_t)
                  for m in range(order + 1)]
    else:
        shifts = [(0, log_t), (1, eps * log_t)]
    margin, worst = -math.inf, (0, 0, 0, float(ts[0]))
    for k in range(kmax + 1):
        for nu_abs in range(nu_max + 1):
            bound = math.log(2.0) + envelope_log(kind, l_seq, eps, order, k + 1, nu_abs, log_t)
            for m, log_factor in shifts:
                gap = log_factor + envelope_log(kind, l_seq, eps, order, k, nu_abs + m, log_t) - bound
                i = int(np.argmax(gap))
                if gap[i] > margin:
                    margin, worst = float(gap[i]), (k, nu_abs, m, float(ts[i]))
    verdict = Verdict.HOLDS if margin <= _DOMINANCE_SLACK else Verdict.FAILS
    return DominanceReport(kind, margin, worst, verdict, kmax, nu_max, (float(ts[0]), float(ts[-1])))


class VectorGrowth(NamedTuple):
    """Result of :func:`verify_vector_growth`."""
    fit: GrowthFit
    """Fit of ``log ||P^k u||_L2`` against ``log M~_(dk)``."""
    log_norms: NDArray
    """``log ||P^k u||_L2`` for ``k = 0..kmax``."""
    log_sup_norms: NDArray
    """``log sup |P^k u|`` on the grid."""
    reference: NDArray
    """``log M~_(dk)``."""
    relation: OrderVerdict
    """``M~ lhd M``, which turns the Roumieu fit for M~ into the Beurling statement for M."""
    verdict: Verdict
    """HOLDS when the fit is finite and its ``log h`` does not drift upwards."""
    grid_meta: dict[str, object]
    """Metadata of the x-grid."""


def _fit_verdict(fit: GrowthFit) -> Verdict:
    """FAILS for an infinite fit; HOLDS unless the fitted ``log h`` rises by more than the drift tolerance."""
    if not fit.finite:
        return Verdict.FAILS
    return Verdict.HOLDS if fit.drift <= GROWTH_DRIFT_TOL else Verdict.INCONCLUSIVE


def verify_vector_growth(inst: MetivierInstance, kmax: int = 12, grid: Optional[XGrid] = None) -> VectorGrowth:
    """Fit ``||P^k u||_L2 <= C h^k M~_(dk)`` over ``k = 0..kmax``.

    :param MetivierInstance inst: The instance.
    :param int kmax: Largest k, between 3 and 12.
    :param XGrid | None grid: The x-grid; default the segment along xi0.
    :return VectorGrowth: The fit, the norms and the verdict.
    :raises ValidationError: If M~ is too short for ``d kmax``.
    """
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=3)
    if inst.order * kmax > inst.m_tilde.truncation:
        raise ValidationError(
            f'M~ needs index {inst.order * kmax}, K={inst.m_tilde.truncation}',
            tag=MetivierErrorTag.TRUNCATION_MISMATCH)
    rows = evaluate_iterates(inst, range(kmax + 1), grid)
    log_norms = np.array([row.log_l2_norm for row in rows])
    log_sup = np.array([row.log_sup_norm for row in rows])
    reference = inst.m_tilde.log_m[:inst.order * kmax + 1:inst.order]
    fit = fit_growth(log_norms, reference)
    relation = order_relation(inst.m_tilde, inst.m_seq, OrderRelation.LHD)
    verdict = _fit_verdict(fit)
    log.debug("verify_vector_growth: log C=%.6g, log h=%.6g, drift=%.3g", fit.log_c, fit.log_h, fit.drift)
    return VectorGrowth(fit, log_norms, log_sup, reference, relation, verdict, rows[0].grid.meta())


class LastEstimate(NamedTuple):
    """Result of :func:`verify_last_estimate`."""
    fit: GrowthFit
    """Fit of ``log L_k + log int_1^inf t^(eps k) Phi_N`` against ``log N_k``."""
    data: NDArray
    """The left side per k."""
    verdict: Verdict
    """HOLDS when the fit is finite and its ``log h`` does not drift upwards."""


def last_estimate_fit(l_seq: WeightSequence, n_seq: WeightSequence, eps: float, kmax: int = 30) -> LastEstimate:
    """Fit ``L_k int_1^inf t^(eps k) Phi_N(t) dt <= C2 B2^k N_k`` for ``k = 0..kmax``.

    The integrals at the fractional powers ``eps k`` have the same closed form per kernel cell as the moments.

    :raises TailDivergent: If N is too short for the power ``eps kmax``.
    """
    eps = _validate.real_arg(eps, 'eps')
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=3, maximum=min(l_seq.truncation, n_seq.truncation))
    if eps < 0.0:
        raise ValidationError(f'eps must be non-negative, got {eps}', tag=MetivierErrorTag.EPS_OUT_OF_RANGE)
    integrals = np.array([integrate_piecewise_power(n_seq, eps * k, lower=1.0).log_abs for k in range(kmax + 1)])
    data = l_seq.log_m[:kmax + 1] + integrals
    fit = fit_growth(data, n_seq.log_m[:kmax + 1])
    return LastEstimate(fit, data, _fit_verdict(fit))


def verify_last_estimate(inst: MetivierInstance, kmax: int = 30) -> LastEstimate:
    """:func:`last_estimate_fit` with the instance's L, N and eps."""
    return last_estimate_fit(inst.l_seq, inst.n_seq, inst.eps, kmax)


class LowerBoundChain(NamedTuple):
    """Result of :func:`lower_bound_chain`."""
    log_values: NDArray
    """``log D_xi0^k u(x0)``."""
    log_moment_bounds: NDArray
    """log of ``I_k - 1/(k+1)`` with the full moments; ``-inf`` when not positive."""
    log_fitted_bounds: NDArray
    """log of ``Q1^(k+1) N_k - 1/(k+1)`` with the fitted moment constant Q1."""
    margins: NDArray
    """Smaller relative gap of the two links per k; negative where a link breaks."""
    log_q1: float
    """The fitted ``log Q1``."""
    verdict: Verdict
    """HOLDS when no margin is below ``-1e-10``."""


def _relative_gap(larger: LogValue, smaller: LogValue) -> float:
    """``(larger - smaller) / max(|larger|, |smaller|)``, 0 when both vanish."""
    diff = larger - smaller
    if diff.is_zero():
        return 0.0
    scale = max(larger.log_abs, smaller.log_abs)
    return diff.sign * math.exp(diff.log_abs - scale)


def lower_bound_chain(inst: MetivierInstance, kmax: int = 30) -> LowerBoundChain:
    """Check ``D_xi0^k u(x0) >= I_k - 1/(k+1) >= Q1^(k+1) N_k - 1/(k+1)`` for ``k = 0..kmax``.

    The first link is an equality when ``mu_1 = 1``, so both are compared up to a relative ``1e-10``.

    :raises TailDivergent: If N is shorter than ``kmax + 16``.
    """
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=3)
    log_q1 = verify_moment_sandwich(inst.kernel, kmax).lower.log_c
    values, moment_bounds, fitted_bounds, margins = [], [], [], []
    for k in range(kmax + 1):
        value = directional_derivative_at_center(inst, k)
        correction = LogValue.from_float(1.0 / (k + 1))
        by_moment = moment(inst.kernel, k) - correction
        by_fit = LogValue.from_log((k + 1) * log_q1 + float(inst.n_seq.log_m[k])) - correction
        margins.append(min(_relative_gap(value, by_moment), _relative_gap(by_moment, by_fit)))
        values.append(value.log_abs)
        moment_bounds.append(by_moment.log_abs if by_moment.sign > 0 else -math.inf)
        fitted_bounds.append(by_fit.log_abs if by_fit.sign > 0 else -math.inf)
    margin_array = np.array(margins)
    verdict = Verdict.HOLDS if float(margin_array.min()) >= -SYMBOLIC_REL_TOL else Verdict.FAILS
    return LowerBoundChain(np.array(values), np.array(moment_bounds), np.array(fitted_bounds), margin_array, log_q1,
                           verdict)


class CrossingIndex(NamedTuple):
    """Where ``log D^k u(x0) - log M_k - k c`` starts to increase for good."""
    c: float
    """The constant."""
    observed: Optional[int]
    """First k after which every increment exceeds c on the table."""
    projected: Optional[int]
    """Extrapolated k from the tail slope of the increments when the table ends first."""


class DivergenceWitness(NamedTuple):
    """Result of :func:`divergence_witness`."""
    increments: NDArray
    """``s_(k+1) - s_k`` with ``s_k = log D_xi0^k u(x0) - log M_k``."""
    trend: TailTrend
    """Tail statistic of the increments."""
    crossings: tuple[CrossingIndex, ...]
    """One entry per constant ``c = 0..10``."""
    verdict: Verdict
    """HOLDS when the increments rise, so ``s_k - k c`` eventually increases for every c."""


def divergence_witness(inst: MetivierInstance, kmax: int = 30,
                       constants: int = DIVERGENCE_CONSTANTS) -> DivergenceWitness:
    """Witness that u is not of class M at x0: ``s_k - k c`` eventually increases for every c.

    :raises TailDivergent: If N is too short for ``kmax``.
    """
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=5, maximum=inst.m_seq.truncation)
    constants = _validate.integer_arg(constants, 'constants', minimum=0)
    values = np.array([directional_derivative_at_center(inst, k).log_abs for k in range(kmax + 1)])
    s = values - inst.m_seq.log_m[:kmax + 1]
    increments = np.diff(s)
    trend = tail_trend(increments)
    crossings = []
    for c in range(constants + 1):
        above = increments > c
        observed: Optional[int] = None
        if above[-1]:
            below = np.flatnonzero(~above)
            observed = int(below[-1] + 1) if below.size else 0
        projected = observed
        if observed is None and trend.trend is Trend.RISING and trend.slope > 0.0:
            projected = increments.size + math.ceil((c - increments[-1]) / trend.slope)
        crossings.append(CrossingIndex(float(c), observed, projected))
    match trend.trend:
        case Trend.RISING:
            verdict = Verdict.HOLDS
        case Trend.MIXED:
            verdict = Verdict.INCONCLUSIVE
        case _:
            verdict = Verdict.FAILS
    return DivergenceWitness(increments, trend, tuple(crossings), verdict)


class OptimalityReport(NamedTuple):
    """Result of :func:`optimality_report`."""
    direction_fits: tuple[GrowthFit, ...]
    """Fit of ``log ||D_j^k u||_L2`` against ``log N_k`` for each coordinate j."""
    last_estimate: LastEstimate
    """The fit of the last estimate."""
    verdict: Verdict
    """The weakest of the per-direction and last-estimate verdicts."""
    grid_meta: dict[str, object]
    """Metadata of the x-grid."""


def _weakest(verdicts: Sequence[Verdict]) -> Verdict:
    if Verdict.FAILS in verdicts:
        return Verdict.FAILS
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.HOLDS


def optimality_report(inst: MetivierInstance, kmax: int = 8, grid: Optional[XGrid] = None,
                      last_kmax: int = 30) -> OptimalityReport:
    """Fit ``||D_j^k u||_L2 <= C h^k N_k`` for every coordinate j together with the last estimate.

    Finite fits for all j put u in the class of N in every direction.
    """
    kmax = _validate.integer_arg(kmax, 'kmax', minimum=3)
    fits = []
    meta: dict[str, object] = {}
    for j in range(inst.dimension):
        rows = evaluate_iterates(inst, range(kmax + 1), grid, direction=j)
        meta = rows[0].grid.meta()
        fits.append(fit_growth([row.log_l2_norm for row in rows], inst.n_seq.log_m[:kmax + 1]))
    last = verify_last_estimate(inst, last_kmax)
    verdict = _weakest([_fit_verdict(fit) for fit in fits] + [last.verdict])
    return OptimalityReport(tuple(fits), last, verdict, meta)
