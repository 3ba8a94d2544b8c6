"""Tests for operators, the construction of u and the growth checks."""
# pylint: disable=import-error,wrong-import-position
import logging
import math
from dataclasses import replace
from functools import lru_cache

import numpy as np
import pytest
from scipy.integrate import quad
from testspec import Assert, TestAction, TestSpec, idspec

from ultravec import InfeasibleParameters, ValidationError
from ultravec._kernel import kernel_value, moment
from ultravec._metivier import (
    AbstractRegime,
    DiffOperator,
    EnvelopeKind,
    GammaFiniteRegime,
    GammaInfiniteRegime,
    GridKind,
    MetivierErrorTag,
    MetivierInstance,
    Polynomial,
    RegimeKind,
    build_bump,
    check_symbol_shrinking_bound,
    coefficient_bound,
    derivative_operator,
    directional_derivative_at_center,
    divergence_witness,
    envelope_dominance,
    evaluate_iterate,
    evaluate_u,
    find_nonelliptic_point,
    instance_to_descriptor,
    iterate_terms,
    laplacian,
    last_estimate_fit,
    lower_bound_chain,
    operator_from_descriptor,
    operator_to_descriptor,
    optimality_report,
    patch_grid,
    point_grid,
    recursion_consistency,
    resolve_regime,
    segment_grid,
    select_parameters,
    verify_last_estimate,
    verify_Qk_envelope,
    verify_vector_growth,
)
from ultravec._numerics import Trend
from ultravec._weightseq import Verdict, make_gevrey, make_qpower, power, rescale

log = logging.getLogger(__name__)

G1 = make_gevrey(1.0, 64)
G2 = make_gevrey(2.0, 64)
G3 = make_gevrey(3.0, 64)
Q22 = make_qpower(2.0, 2.0, 64)

D1 = derivative_operator(2, 0)
X2D1 = DiffOperator(2, (((1, 0), Polynomial.monomial((0, 1))),))
HEAT = DiffOperator(2, (((1, 0), 1.0), ((0, 2), -1.0)))
FINITE = GammaFiniteRegime(rho=0.4, gamma0=2.0, gamma_tilde=2.8)


@lru_cache(maxsize=None)
def _d1() -> MetivierInstance:
    return select_parameters(G3, D1, FINITE, x0=[0.0, 0.0], xi0=[0.0, 1.0], flatness=2.0)


@lru_cache(maxsize=None)
def _x2d1() -> MetivierInstance:
    return select_parameters(G3, X2D1, FINITE, x0=[0.0, 0.0], xi0=[0.0, 1.0], flatness=2.0)


def _close(expected: float, rel: float = 1e-12, abs_tol: float = 1e-12):
    return lambda found: math.isclose(float(found), expected, rel_tol=rel, abs_tol=abs_tol)


@pytest.mark.parametrize('testspec', [
    idspec('OPERATOR_001', TestAction(
        name="D_j has order 1 and symbol xi_j",
        action=lambda: (D1.order, float(D1.symbol([0.3, 0.2], [2.0, 5.0]))),
        assertion=Assert.EQUAL, expected=(1, 2.0))),
    idspec('OPERATOR_002', TestAction(
        name="the Laplacian has symbol |xi|^2",
        action=lambda: float(laplacian(3).principal_symbol([0.0, 0.0, 0.0], [1.0, 2.0, 2.0])),
        assertion=Assert.EQUAL, expected=9.0)),
    idspec('OPERATOR_003', TestAction(
        name="the principal symbol drops lower-order terms",
        action=lambda: float(HEAT.principal_symbol([0.0, 0.0], [1.0, 1.0])),
        assertion=Assert.EQUAL, expected=-1.0)),
    idspec('OPERATOR_004', TestAction(
        name="a descriptor written by the operator is read back to the same operator",
        action=lambda: operator_from_descriptor(operator_to_descriptor(X2D1)) == X2D1,
        assertion=Assert.TRUE)),
    idspec('OPERATOR_005', TestAction(
        name="builtin descriptors name D_j and the Laplacian",
        action=lambda: (operator_from_descriptor({'builtin': 'derivative', 'index': 1, 'dimension': 2})
                        == derivative_operator(2, 1)),
        assertion=Assert.TRUE)),
    idspec('OPERATOR_006', TestAction(
        name="an unknown builtin is rejected",
        action=operator_from_descriptor, args=[{'builtin': 'wave', 'dimension': 2}],
        exception=ValidationError, exception_tag=MetivierErrorTag.INVALID_DESCRIPTOR)),
    idspec('OPERATOR_007', TestAction(
        name="coordinate indices are 0-based and bounded",
        action=derivative_operator, args=[2, 2],
        exception=ValidationError, exception_tag=MetivierErrorTag.INDEX_OUT_OF_RANGE)),
    idspec('OPERATOR_008', TestAction(
        name="an operator with only zero coefficients is rejected",
        action=DiffOperator, args=[2, (((1, 0), 0.0),)],
        exception=ValidationError, exception_tag=MetivierErrorTag.ZERO_PRINCIPAL_PART)),
    idspec('OPERATOR_009', TestAction(
        name="a constant coefficient D_1 has C_P = 1",
        action=lambda: coefficient_bound(D1, [0.0, 0.0], [0.0, 1.0], 1.0, G2),
        validate_result=_close(1.0))),
])
def test_operator(testspec: TestSpec) -> None:
    """Test operators and their descriptors."""
    testspec.run()


@pytest.mark.parametrize('testspec', [
    idspec('NONELLIPTIC_001', TestAction(
        name="D_1 has its characteristic direction along the second axis",
        action=lambda: find_nonelliptic_point(D1),
        validate_result=lambda p: p.found and np.allclose(p.xi0, [0.0, 1.0], atol=1e-6))),
    idspec('NONELLIPTIC_002', TestAction(
        name="the heat operator is characteristic along the time axis",
        action=lambda: find_nonelliptic_point(HEAT),
        validate_result=lambda p: p.found and np.allclose(p.xi0, [1.0, 0.0], atol=1e-6))),
    idspec('NONELLIPTIC_003', TestAction(
        name="the Laplacian has no non-elliptic point",
        action=lambda: find_nonelliptic_point(laplacian(2)).found,
        assertion=Assert.FALSE)),
    idspec('NONELLIPTIC_004', TestAction(
        name="a non-elliptic Laplacian witness is rejected",
        action=check_symbol_shrinking_bound, args=[laplacian(2), [0.0, 0.0], [1.0, 0.0], 0.25],
        exception=ValidationError, exception_tag=MetivierErrorTag.NOT_NONELLIPTIC)),
    idspec('NONELLIPTIC_005', TestAction(
        name="the symbol of D_1 vanishes along xi0 so D is 0",
        action=lambda: check_symbol_shrinking_bound(D1, [0.0, 0.0], [0.0, 1.0], 0.25),
        validate_result=lambda b: b.d_bound == 0.0 and b.verdict is Verdict.HOLDS)),
    idspec('NONELLIPTIC_006', TestAction(
        name="D_1 + x_1 D_2 has D = 2 delta",
        action=lambda: check_symbol_shrinking_bound(
            DiffOperator(2, (((1, 0), 1.0), ((0, 1), Polynomial.monomial((1, 0))))), [0.0, 0.0], [0.0, 1.0], 0.25),
        validate_result=lambda b: math.isclose(b.d_bound, 2.0, rel_tol=1e-9) and b.verdict is Verdict.HOLDS)),
])
def test_nonelliptic(testspec: TestSpec) -> None:
    """Test the search for non-elliptic points and the symbol bound."""
    testspec.run()


@pytest.mark.parametrize('testspec', [
    idspec('REGIME_001', TestAction(
        name="the finite regime on Gevrey(3) gives eps = 2/9 and tau = 4.5",
        action=lambda: resolve_regime(G3, 1, FINITE),
        validate_result=lambda r: (r.kind is RegimeKind.GAMMA_FINITE and math.isclose(r.eps, 2.0 / 9.0)
                                   and math.isclose(r.tau, 4.5) and math.isclose(r.values['gammaPrime'], 3.6)))),
    idspec('REGIME_002', TestAction(
        name="the finite regime needs gamma(M) > 1",
        action=resolve_regime, args=[G1, 1, GammaFiniteRegime()],
        exception=InfeasibleParameters, exception_tag=MetivierErrorTag.REGIME_CONSTRAINT)),
    idspec('REGIME_003', TestAction(
        name="the infinite regime fills in q, sigma and rho",
        action=lambda: resolve_regime(Q22, 1, GammaInfiniteRegime()),
        validate_result=lambda r: (r.values == {'q': 0.8, 'sigma': 0.9, 'rho': 1.5}
                                   and math.isclose(r.tau, 1.5 / 0.9) and math.isclose(r.eps, 0.45)))),
    idspec('REGIME_004', TestAction(
        name="the infinite regime needs rho q > 1",
        action=resolve_regime, args=[Q22, 1, GammaInfiniteRegime(q=0.5)],
        exception=InfeasibleParameters, exception_tag=MetivierErrorTag.REGIME_CONSTRAINT)),
    idspec('REGIME_005', TestAction(
        name="the infinite regime needs gamma(M) = inf",
        action=resolve_regime, args=[G3, 1, GammaInfiniteRegime()],
        exception=InfeasibleParameters, exception_tag=MetivierErrorTag.REGIME_CONSTRAINT)),
    idspec('REGIME_006', TestAction(
        name="the abstract regime takes eps at the middle of its window",
        action=lambda: resolve_regime(Q22, 1, AbstractRegime(1.5, power(Q22, 0.25), power(Q22, 0.75),
                                                             power(Q22, 1.125))),
        validate_result=lambda r: r.kind is RegimeKind.ABSTRACT and math.isclose(r.eps, 5.0 / 12.0))),
    idspec('REGIME_007', TestAction(
        name="the abstract regime rejects tau outside (1, 2d/(2d-1))",
        action=resolve_regime, args=[Q22, 1, AbstractRegime(2.5, power(Q22, 0.25), power(Q22, 0.75),
                                                             power(Q22, 1.125))],
        exception=InfeasibleParameters, exception_tag=MetivierErrorTag.REGIME_CONSTRAINT)),
])
def test_regime(testspec: TestSpec) -> None:
    """Test the regime parameter selection."""
    testspec.run()


def test_instance() -> None:
    """The instance records its sequences, its constants and its point."""
    inst = _d1()
    assert math.isclose(inst.eps, 2.0 / 9.0)
    assert inst.order == 1 and inst.dimension == 2
    assert math.isclose(inst.c_p, 1.0)
    assert inst.bump.log_h0 >= math.log(2.0 * inst.c_p) - 1e-12
    assert np.allclose(inst.n_seq.log_m, 3.6 * G1.log_m)
    record = instance_to_descriptor(inst)
    assert record['regime']['kind'] == RegimeKind.GAMMA_FINITE.value
    with pytest.raises(ValueError):
        inst.x0[0] = 1.0


def test_instance_without_point() -> None:
    """A Laplacian instance finds no non-elliptic point."""
    with pytest.raises(InfeasibleParameters) as err:
        select_parameters(G3, laplacian(2), FINITE)
    assert err.value.tag is MetivierErrorTag.NO_NONELLIPTIC_POINT


@pytest.mark.parametrize('testspec', [
    idspec('BUMP_001', TestAction(
        name="the cut-off is 1 on the inner ball and 0 outside the outer ball",
        action=lambda: build_bump(G2, 1.0, 1.0)(np.array([[0.0, 0.0], [0.7, 0.7], [2.0, 0.0], [0.0, 3.0]])),
        validate_result=lambda values: np.allclose(values, [1.0, 1.0, 0.0, 0.0]))),
    idspec('BUMP_002', TestAction(
        name="the cut-off fit against Gevrey(2) is finite",
        action=lambda: build_bump(G2, 1.0, 1.0),
        validate_result=lambda b: b.fit.finite and math.isfinite(b.log_c0) and b.max_order == 20)),
    idspec('BUMP_003', TestAction(
        name="an operator bound raises h0 to 2 C_P",
        action=lambda: build_bump(G2, 1.0, 1.0, operator_bound=1e6).log_h0,
        validate_result=_close(math.log(2e6)))),
    idspec('BUMP_004', TestAction(
        name="a quasianalytic L admits no cut-off",
        action=build_bump, args=[G1],
        exception=ValidationError, exception_tag=MetivierErrorTag.BUMP_NOT_OF_CLASS)),
])
def test_bump(testspec: TestSpec) -> None:
    """Test the cut-off and its derivative fit."""
    testspec.run()


@pytest.mark.parametrize('testspec', [
    idspec('ITERATE_001', TestAction(
        name="iterates of D_1 transverse to xi0 only differentiate the cut-off",
        action=lambda: iterate_terms(_d1(), 3).as_map(),
        assertion=Assert.EQUAL, expected={((0, 0), 0, 3, (3, 0)): 1j})),
    idspec('ITERATE_002', TestAction(
        name="D_2 along xi0 brings down a power of t",
        action=lambda: iterate_terms(_d1(), 1, direction=1).as_map(),
        assertion=Assert.EQUAL, expected={((0, 0), 0, 1, (0, 1)): -1j, ((0, 0), 1, 0, (0, 0)): 1 + 0j})),
    idspec('ITERATE_003', TestAction(
        name="Q_0 is the cut-off alone",
        action=lambda: iterate_terms(_x2d1(), 0).as_map(),
        assertion=Assert.EQUAL, expected={((0, 0), 0, 0, (0, 0)): 1 + 0j})),
    idspec('ITERATE_004', TestAction(
        name="the expansion of x_2 D_1 agrees with the numerical recursion",
        action=lambda: recursion_consistency(_x2d1(), 3),
        validate_result=lambda gap: gap <= 1e-10)),
    idspec('ITERATE_005', TestAction(
        name="iterate orders above 12 are rejected",
        action=lambda: iterate_terms(_d1(), 13),
        exception=ValidationError)),
    idspec('ITERATE_006', TestAction(
        name="the direction must be a coordinate",
        action=lambda: iterate_terms(_d1(), 1, direction=2),
        exception=ValidationError, exception_tag=MetivierErrorTag.INDEX_OUT_OF_RANGE)),
])
def test_iterates(testspec: TestSpec) -> None:
    """Test the symbolic iterates."""
    testspec.run()


@pytest.mark.parametrize('testspec', [
    idspec('EVALUATE_001', TestAction(
        name="u vanishes outside the 2 delta-ball",
        action=lambda: evaluate_u(_d1(), [2.5, 0.0]),
        assertion=Assert.EQUAL, expected=0j)),
    idspec('EVALUATE_002', TestAction(
        name="u vanishes on the sphere of radius 2 delta",
        action=lambda: evaluate_u(_d1(), [0.0, 2.0]),
        assertion=Assert.EQUAL, expected=0j)),
    idspec('EVALUATE_003', TestAction(
        name="u at x0 is the moment of order 0 from 1",
        action=lambda: evaluate_u(_d1(), [0.0, 0.0]),
        validate_result=lambda value: (abs(value.imag) <= 1e-12 and math.isclose(
            value.real, float(moment(_d1().kernel, 0, 1.0)), rel_tol=1e-8)))),
    idspec('EVALUATE_004', TestAction(
        name="the directional derivative of order 0 at x0 is the same moment",
        action=lambda: float(directional_derivative_at_center(_d1(), 0)),
        validate_result=lambda value: math.isclose(value, float(moment(_d1().kernel, 0, 1.0)), rel_tol=1e-12))),
    idspec('EVALUATE_005', TestAction(
        name="point grids need one coordinate per dimension",
        action=lambda: point_grid(_d1(), [[0.0, 0.0, 0.0]]),
        exception=ValidationError, exception_tag=MetivierErrorTag.GRID_DIMENSION)),
])
def test_evaluate_u(testspec: TestSpec) -> None:
    """Test the evaluation of u."""
    testspec.run()


def test_u_matches_quadrature() -> None:
    """The oscillatory rule agrees with adaptive quadrature inside the ball."""
    inst = _d1()
    offset = np.array([0.0, 1.2])
    end = (2.0 / 1.2) ** (1.0 / inst.eps)

    def integrand(t: float) -> float:
        cutoff = float(inst.bump(t ** inst.eps * offset))
        return cutoff * float(kernel_value(inst.kernel, math.log(t)))

    real, _ = quad(lambda t: integrand(t) * math.cos(1.2 * t), 1.0, end, limit=500, epsabs=1e-13, epsrel=1e-12)
    imag, _ = quad(lambda t: integrand(t) * math.sin(1.2 * t), 1.0, end, limit=500, epsabs=1e-13, epsrel=1e-12)
    value = evaluate_u(inst, offset)
    assert abs(value - complex(real, imag)) <= 1e-7 * max(1.0, abs(value))


def test_first_iterate_matches_finite_difference() -> None:
    """``P u = -i d_1 u`` agrees with a fourth-order central difference."""
    inst = _d1()
    x = np.array([0.3, 0.4])
    h = 1e-3
    step = np.array([h, 0.0])
    samples = [evaluate_u(inst, x + m * step) for m in (-2, -1, 1, 2)]
    derivative = (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) / (12.0 * h)
    row = evaluate_iterate(inst, 1, point_grid(inst, [x]))
    assert abs(row.values[0] - (-1j) * derivative) <= 1e-4 * max(1.0, abs(row.values[0]))


def test_grids() -> None:
    """Segments follow xi0 and patches add a perpendicular axis."""
    inst = _d1()
    segment = segment_grid(inst, 5)
    assert segment.kind is GridKind.SEGMENT
    assert np.allclose(segment.points, [[0.0, -2.0], [0.0, -1.0], [0.0, 0.0], [0.0, 1.0], [0.0, 2.0]])
    patch = patch_grid(inst, 3)
    assert patch.shape == (3, 3) and patch.points.shape == (9, 2)
    assert abs(float(np.dot(patch.basis[0], patch.basis[1]))) <= 1e-12
    assert segment.meta()['extent'] == [[-2.0, 2.0]]


def test_iterates_outside_ball_are_zero() -> None:
    """Every iterate vanishes at points outside the 2 delta-ball."""
    inst = _d1()
    row = evaluate_iterate(inst, 2, point_grid(inst, [[2.0, 1.0], [-3.0, 0.0]]))
    assert np.all(row.values == 0j)
    assert row.log_sup_norm == -math.inf


@pytest.mark.parametrize('kind', [EnvelopeKind.LAMBDA, EnvelopeKind.THETA])
def test_envelope_dominance(kind: EnvelopeKind) -> None:
    """One step of the recursion stays below twice the next envelope."""
    for order in (1, 2):
        report = envelope_dominance(G2, 0.25, order, kmax=8, nu_max=4, kind=kind)
        assert report.verdict is Verdict.HOLDS, report.worst
        assert report.margin <= 1e-9


def test_envelope_dominance_needs_long_l() -> None:
    """The envelope reads L up to ``|nu| + dk``."""
    with pytest.raises(ValidationError) as err:
        envelope_dominance(make_gevrey(2.0, 8), 0.25, 2, kmax=8, nu_max=4)
    assert err.value.tag is MetivierErrorTag.TRUNCATION_MISMATCH


def test_qk_envelope() -> None:
    """The symbolic iterates of D_1 fit the envelope with a finite A."""
    report = verify_Qk_envelope(_d1(), kmax=4, nu_max=2, t_points=8)
    assert report.verdict is not Verdict.FAILS
    assert math.isfinite(report.log_a) and report.log_a >= 0.0
    assert report.log_lhs.shape == (5, len(report.nus))
    with pytest.raises(ValidationError) as err:
        verify_Qk_envelope(_d1(), kmax=4, kind=EnvelopeKind.THETA)
    assert err.value.tag is MetivierErrorTag.INDEX_OUT_OF_RANGE


@pytest.mark.parametrize('instance', [_d1, _x2d1], ids=['D1', 'x2D1'])
@pytest.mark.parametrize('kind, direction', [(EnvelopeKind.LAMBDA, None), (EnvelopeKind.THETA, 0),
                                             (EnvelopeKind.THETA, 1)])
def test_qk_envelope_holds(instance, kind: EnvelopeKind, direction) -> None:
    """Both envelopes hold at kmax 8 and |nu| <= 4 with a bounded drift."""
    report = verify_Qk_envelope(instance(), kmax=8, nu_max=4, kind=kind, direction=direction)
    log.info("%s/%s: log A=%.6g, drift=%.3g, base=%.6g", kind.value, direction, report.log_a, report.drift,
             report.base_margin)
    assert report.verdict is Verdict.HOLDS
    assert math.isfinite(report.log_a)
    assert report.drift <= 0.5
    assert report.base_margin <= 0.0


@pytest.mark.parametrize('instance', [_d1, _x2d1], ids=['D1', 'x2D1'])
def test_qk_envelope_fails_at_k0(instance) -> None:
    """A cut-off constant too small for psi itself fails; no A repairs k = 0."""
    inst = instance()
    shrunk = replace(inst, bump=replace(inst.bump, log_c0=inst.bump.log_c0 - 25.0))
    report = verify_Qk_envelope(shrunk, kmax=8, nu_max=4)
    assert report.base_margin > 0.0
    assert report.verdict is Verdict.FAILS


def test_vector_growth() -> None:
    """The L2 norms of P^k u on a patch have a finite fit against M~_k."""
    report = verify_vector_growth(_d1(), kmax=4, grid=patch_grid(_d1(), 9))
    assert report.fit.finite
    assert np.all(np.isfinite(report.log_norms))
    assert report.relation.holds is Verdict.HOLDS
    assert report.grid_meta['kind'] == GridKind.PATCH.value


def test_vector_growth_on_the_default_segment() -> None:
    """Up to k = 12 on the 401-point segment the growth fit holds with non-positive residuals."""
    inst = _d1()
    report = verify_vector_growth(inst, 12, segment_grid(inst, 401))
    log.info("growth: log C=%.6g, log h=%.6g, residual=%.3g, drift=%.3g", report.fit.log_c, report.fit.log_h,
             report.fit.max_residual, report.fit.drift)
    assert report.verdict is Verdict.HOLDS
    assert report.fit.finite
    assert report.fit.max_residual <= 1e-10
    assert np.all(np.isfinite(report.log_norms))
    assert report.grid_meta['points'] == 401


@pytest.mark.parametrize('k', [2, 3, 6])
def test_iterates_decay_inside_the_cutoff_band(k: int) -> None:
    """Points whose cut-off band lies beyond the kernel cap are integrated up to the band."""
    inst = _d1()
    s = np.linspace(0.16, 0.18, 5)
    row = evaluate_iterate(inst, k, point_grid(inst, inst.x0 + s[:, None] * inst.xi0))
    assert np.all(np.isfinite(row.values.real)) and np.all(np.isfinite(row.values.imag))
    assert math.isfinite(row.log_sup_norm)


@pytest.mark.parametrize('testspec', [
    idspec('LAST_001', TestAction(
        name="the last estimate holds for the finite regime on Gevrey(3)",
        action=lambda: verify_last_estimate(_d1(), 30),
        validate_result=lambda r: r.fit.finite and r.verdict is Verdict.HOLDS and r.data.shape == (31,))),
    idspec('LAST_002', TestAction(
        name="with eps = 0 the estimate reduces to L_k I_0",
        action=lambda: last_estimate_fit(G2, G3, 0.0, 20).fit.finite,
        assertion=Assert.TRUE)),
    idspec('LAST_003', TestAction(
        name="rescaling L by 2^k shifts the fitted log h by log 2",
        action=lambda: (last_estimate_fit(rescale(G2, math.log(2.0)), G3, 0.25, 20).fit.log_h
                        - last_estimate_fit(G2, G3, 0.25, 20).fit.log_h),
        validate_result=_close(math.log(2.0), rel=1e-9, abs_tol=1e-9))),
    idspec('LAST_004', TestAction(
        name="a negative eps is rejected",
        action=last_estimate_fit, args=[G2, G3, -0.5],
        exception=ValidationError, exception_tag=MetivierErrorTag.EPS_OUT_OF_RANGE)),
])
def test_last_estimate(testspec: TestSpec) -> None:
    """Test the last estimate."""
    testspec.run()


def test_lower_bound_chain() -> None:
    """D_xi0^k u(x0) is bounded below through the moments by Q1^(k+1) N_k."""
    report = lower_bound_chain(_d1(), 30)
    assert report.verdict is Verdict.HOLDS
    assert float(report.margins.min()) >= -1e-10
    assert report.log_values.shape == (31,)


def test_divergence_witness() -> None:
    """u is not of class M at x0 for the finite regime on Gevrey(3)."""
    report = divergence_witness(_d1(), 30)
    assert report.trend.trend is Trend.RISING
    assert report.verdict is Verdict.HOLDS
    assert len(report.crossings) == 11
    assert all(c.projected is not None for c in report.crossings)


def test_optimality_report() -> None:
    """The directional iterates of u fit N in both coordinates."""
    report = optimality_report(_d1(), kmax=3, grid=patch_grid(_d1(), 5), last_kmax=20)
    assert len(report.direction_fits) == 2
    assert all(fit.finite for fit in report.direction_fits)
    assert report.last_estimate.verdict is Verdict.HOLDS


if __name__ == '__main__':
    pytest.main([__file__, "--log-cli-level=INFO", '-s'])
