"""Sampled checks of the identities and equivalences of associated weights.

The functions compared here are piecewise linear in ``log t``, so differences are evaluated
on a uniform ``log t`` grid together with every kink inside the domain. Their maxima on the
domain are therefore exact; the grid is recorded for the trend statistics.
"""
import math
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from .. import _validate
from .._constants import DEFAULT_SEED, FIT_GRID_POINTS, INVERSION_REL_TOL
from .._exceptions import InfeasibleParameters, ValidationError
from .._log import log
from .._numerics import TailTrend, Trend, tail_trend
from .._weightseq import Verdict, WeightSequence, exact_terms, power
from .._weightseq._family import dominance_order
from ._error_tags import AssocWeightErrorTag
from ._weight import AssociatedWeight, omega_values

__all__ = (
    'AuxEquivalence',
    'OmegaComparison',
    'PowerScalingReport',
    'ShiftReport',
    'aux_equivalence',
    'aux_shift_check',
    'compare_omegas',
    'power_scaling_check',
)


class PowerScalingReport(NamedTuple):
    """Result of :func:`power_scaling_check`."""
    a: float
    """The exponent."""
    samples: int
    """Number of sampled arguments."""
    max_discrepancy: float
    """Largest ``|omega_(M^a)(t) - a omega_M(t^(1/a))|``."""
    max_relative: float
    """The same discrepancy divided by ``max(1, |a omega_M(t^(1/a))|)``."""
    seed: int
    """Seed of the sampler."""
    domain: tuple[float, float]
    """Sampled range of ``log t``."""


class AuxEquivalence(NamedTuple):
    """Result of :func:`aux_equivalence`."""
    tau: float
    """The exponent tau."""
    log_a: float
    """``max_k (log U_k - tau log T_k)``, the fitted log A of ``U <= A T^tau``."""
    dominated: Verdict
    """Whether ``U <= A T^tau`` holds for some A (exactly for symbolic families, by trend otherwise)."""
    log_c: float
    """``max (omega_T(s) - omega_U(s^tau)/tau)`` over the domain."""
    residual: float
    """``max_k (log U_k - tau log T_k - tau C)`` over the checked indices; non-positive when ``A = e^(tau C)`` works."""
    checked: int
    """Number of indices ``0..checked-1`` whose inversion point lies in the domain."""
    verdict: Verdict
    """Both directions hold and are consistent."""
    grid_points: int
    """Size of the uniform grid (kinks are added)."""
    domain: tuple[float, float]
    """Range of ``log s``."""


class ShiftReport(NamedTuple):
    """Result of :func:`aux_shift_check`."""
    log_c: float
    """``max (omega_T(s) - omega_U(a s^sigma)/tau)`` over the domain."""
    trend: TailTrend
    """Tail statistic of the difference on the uniform grid."""
    verdict: Verdict
    """The enlarged constant stays finite (no rising trend)."""
    equivalence: AuxEquivalence
    """The checked precondition."""
    grid_points: int
    """Size of the uniform grid."""
    domain: tuple[float, float]
    """Range of ``log s``."""


class OmegaComparison(NamedTuple):
    """Result of :func:`compare_omegas`."""
    samples: int
    """Number of sampled arguments."""
    max_excess: float
    """Largest ``omega_M(t) - omega_V(t)``; non-positive when the comparison holds."""
    seed: int
    """Seed of the sampler."""
    domain: tuple[float, float]
    """Sampled range of ``log t``."""


def _same_truncation(first: WeightSequence, second: WeightSequence) -> None:
    if first.truncation != second.truncation:
        raise ValidationError(
            f'truncations differ: {first.truncation} and {second.truncation}',
            tag=AssocWeightErrorTag.TRUNCATION_MISMATCH)


def _grid(lower: float, upper: float, points: int, kinks: NDArray) -> tuple[NDArray, NDArray]:
    uniform = np.linspace(lower, upper, points)
    inside = kinks[(kinks >= lower) & (kinks <= upper)]
    return uniform, np.union1d(uniform, inside)


def power_scaling_check(m: WeightSequence, a: float, samples: int = 1000,
                        seed: int = DEFAULT_SEED) -> PowerScalingReport:
    """Compare ``omega_(M^a)(t)`` with ``a omega_M(t^(1/a))`` on random ``log t``.

    :param WeightSequence m: The sequence.
    :param float a: Positive exponent.
    :param int samples: Number of arguments.
    :param int seed: Seed of the sampler.
    :return PowerScalingReport: The largest relative discrepancy.
    """
    a = _validate.positive_real_arg(a, 'a')
    samples = _validate.integer_arg(samples, 'samples', minimum=1)
    base = AssociatedWeight(m)
    scaled = AssociatedWeight(power(m, a))
    upper = min(scaled.domain_cap, a * base.domain_cap)
    lower = -1.0
    logt = np.random.default_rng(seed).uniform(lower, upper, size=samples)
    lhs = omega_values(scaled, logt)
    rhs = a * omega_values(base, np.minimum(logt / a, base.domain_cap))
    gap = np.abs(lhs - rhs)
    return PowerScalingReport(a, samples, float(np.max(gap)), float(np.max(gap / np.maximum(1.0, np.abs(rhs)))), seed,
                              (lower, upper))


def _dominated(t_seq: WeightSequence, u_seq: WeightSequence, tau: float, r: NDArray) -> Verdict:
    t_terms = exact_terms(t_seq.family)
    u_terms = exact_terms(u_seq.family)
    if t_terms is not None and u_terms is not None:
        difference = dict(u_terms)
        for key, value in t_terms.items():
            difference[key] = difference.get(key, 0.0) - tau * value
        ordered = dominance_order(difference)
        return Verdict.FAILS if ordered and ordered[0][1] > 0 else Verdict.HOLDS
    match tail_trend(r).trend:
        case Trend.RISING:
            return Verdict.FAILS
        case Trend.MIXED:
            return Verdict.INCONCLUSIVE
    return Verdict.HOLDS


def aux_equivalence(t_seq: WeightSequence, u_seq: WeightSequence, tau: float,
                    grid_points: int = FIT_GRID_POINTS) -> AuxEquivalence:
    """Check both directions of the equivalence ``U <= A T^tau`` iff ``omega_T(s) <= omega_U(s^tau)/tau + C``.

    ``log A`` is read off the tables. C is the maximum of ``omega_T(s) - omega_U(s^tau)/tau``
    over the common exact domain. Direction one is consistent when ``C <= log A / tau``;
    direction two when ``log U_k <= tau C + tau log T_k`` for every k whose inversion point
    lies inside the domain.

    :param WeightSequence t_seq: T.
    :param WeightSequence u_seq: U.
    :param float tau: Exponent, greater than 1.
    :param int grid_points: Size of the uniform ``log s`` grid.
    :return AuxEquivalence: Fitted constants and the verdict.
    :raises ValidationError: If tau <= 1 or the truncations differ.
    """
    tau = _validate.real_arg(tau, 'tau')
    if tau <= 1.0:
        raise ValidationError(f'tau must exceed 1, got {tau}', tag=AssocWeightErrorTag.TAU_NOT_ABOVE_ONE)
    grid_points = _validate.integer_arg(grid_points, 'grid_points', minimum=2)
    _same_truncation(t_seq, u_seq)
    r = u_seq.log_m - tau * t_seq.log_m
    log_a = float(np.max(r))
    dominated = _dominated(t_seq, u_seq, tau, r)

    w_t = AssociatedWeight(t_seq)
    w_u = AssociatedWeight(u_seq)
    upper = min(w_t.domain_cap, w_u.domain_cap / tau)
    lower = min(w_t.breakpoints[0], w_u.breakpoints[0] / tau) - 1.0
    _, points = _grid(lower, upper, grid_points, np.concatenate((w_t.breakpoints, w_u.breakpoints / tau)))
    difference = omega_values(w_t, points) - omega_values(w_u, np.minimum(tau * points, w_u.domain_cap)) / tau
    log_c = float(np.max(difference))

    checked = 1 + int(np.searchsorted(w_u.breakpoints, tau * upper, side='right'))
    checked = min(checked, u_seq.truncation + 1)
    residual = float(np.max(r[:checked] - tau * log_c))
    slack = INVERSION_REL_TOL * max(1.0, float(np.max(np.abs(u_seq.log_m[:checked]))))
    consistent = log_c <= log_a / tau + slack and residual <= slack
    if dominated is Verdict.FAILS:
        verdict = Verdict.FAILS
    elif dominated is Verdict.HOLDS and consistent and math.isfinite(log_c):
        verdict = Verdict.HOLDS
    else:
        verdict = Verdict.INCONCLUSIVE
    log.debug("aux_equivalence: log A=%s, C=%s, residual=%s over %d indices", log_a, log_c, residual, checked)
    return AuxEquivalence(tau, log_a, dominated, log_c, residual, checked, verdict, grid_points, (lower, upper))


def aux_shift_check(t_seq: WeightSequence, u_seq: WeightSequence, tau: float, a: float, sigma: float,
                    grid_points: int = FIT_GRID_POINTS) -> ShiftReport:
    """Fit C in ``omega_T(s) <= omega_U(a s^sigma)/tau + C`` for ``0 < a < 1`` and ``sigma > tau``.

    :raises ValidationError: If a is outside (0, 1) or ``sigma <= tau``.
    :raises InfeasibleParameters: If ``U <= A T^tau`` does not hold.
    """
    a = _validate.unit_interval_arg(a, 'a')
    sigma = _validate.real_arg(sigma, 'sigma')
    tau = _validate.real_arg(tau, 'tau')
    if sigma <= tau:
        raise ValidationError(
            f'sigma must exceed tau, got sigma={sigma}, tau={tau}', tag=AssocWeightErrorTag.SHIFT_EXPONENT_TOO_SMALL)
    equivalence = aux_equivalence(t_seq, u_seq, tau, grid_points)
    if equivalence.verdict is not Verdict.HOLDS:
        raise InfeasibleParameters(
            f'U <= A T^tau is {equivalence.verdict.value} for tau={tau}',
            tag=AssocWeightErrorTag.AUX_PRECONDITION, inequality='U_k <= A T_k^tau')

    log_a = math.log(a)
    w_t = AssociatedWeight(t_seq)
    w_u = AssociatedWeight(u_seq)
    upper = min(w_t.domain_cap, (w_u.domain_cap - log_a) / sigma)
    lower = min(w_t.breakpoints[0], (w_u.breakpoints[0] - log_a) / sigma) - 1.0
    uniform, points = _grid(lower, upper, grid_points,
                            np.concatenate((w_t.breakpoints, (w_u.breakpoints - log_a) / sigma)))

    def difference(s: NDArray) -> NDArray:
        return omega_values(w_t, s) - omega_values(w_u, np.minimum(log_a + sigma * s, w_u.domain_cap)) / tau

    log_c = float(np.max(difference(points)))
    trend = tail_trend(difference(uniform))
    match trend.trend:
        case Trend.RISING:
            verdict = Verdict.FAILS
        case Trend.MIXED:
            verdict = Verdict.INCONCLUSIVE
        case _:
            verdict = Verdict.HOLDS if math.isfinite(log_c) else Verdict.FAILS
    return ShiftReport(log_c, trend, verdict, equivalence, grid_points, (lower, upper))


def compare_omegas(m: WeightSequence, v: WeightSequence, samples: int = 1000,
                   seed: int = DEFAULT_SEED) -> OmegaComparison:
    """Check ``omega_M <= omega_V`` on random arguments, for ``V <= M`` pointwise.

    :raises ValidationError: If some ``V_k > M_k`` or the truncations differ.
    """
    _same_truncation(m, v)
    samples = _validate.integer_arg(samples, 'samples', minimum=1)
    excess = v.log_m - m.log_m
    bad = np.flatnonzero(excess > INVERSION_REL_TOL * np.maximum(1.0, np.abs(m.log_m)))
    if bad.size:
        raise ValidationError(f'V_k > M_k at k={int(bad[0])}', tag=AssocWeightErrorTag.NOT_DOMINATED)
    w_m = AssociatedWeight(m)
    w_v = AssociatedWeight(v)
    lower, upper = -1.0, min(w_m.domain_cap, w_v.domain_cap)
    logt = np.random.default_rng(seed).uniform(lower, upper, size=samples)
    gap = omega_values(w_m, logt) - omega_values(w_v, logt)
    return OmegaComparison(samples, float(np.max(gap)), seed, (lower, upper))
