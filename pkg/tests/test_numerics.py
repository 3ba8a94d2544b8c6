"""Tests for the numerics substrate."""
# pylint: disable=import-error,wrong-import-position
import logging
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings
from scipy.integrate import quad
from scipy.optimize import linprog
from scipy.special import gammaln
from testspec import Assert, TestAction, TestSpec, idspec

from ultravec import BudgetExceeded, TailDivergent, ValidationError
from ultravec._numerics import (
    BumpProfile,
    ExpressionProfile,
    LogValue,
    MultiJets,
    NumericsErrorTag,
    Trend,
    UnivariateJets,
    check_growth,
    fit_geometric_lower,
    fit_geometric_upper,
    fit_growth,
    integrate_oscillatory,
    integrate_piecewise_power,
    log_sum,
    multi_indices,
    oscillatory_nodes,
    power_integral_cap,
    tail_trend,
    taylor_derivatives,
)

log = logging.getLogger(__name__)

_ZEROS_TABLE = np.zeros(11)
_DOUBLING_TABLE = np.arange(6) * math.log(2.0)


def _close(expected: float, rel: float = 1e-12):
    return lambda found: math.isclose(float(found), expected, rel_tol=rel)


@pytest.mark.parametrize('testspec', [
    idspec('LOGVALUE_001', TestAction(
        name="3 + 4 == 7",
        action=lambda: float(LogValue.from_float(3.0) + LogValue.from_float(4.0)),
        validate_result=_close(7.0))),
    idspec('LOGVALUE_002', TestAction(
        name="5 - 5 is exactly zero",
        action=lambda: (LogValue.from_float(5.0) - LogValue.from_float(5.0)).is_zero(),
        assertion=Assert.TRUE)),
    idspec('LOGVALUE_003', TestAction(
        name="opposite signs keep the larger sign",
        action=lambda: float(LogValue.from_float(2.0) + LogValue.from_float(-5.0)),
        validate_result=_close(-3.0))),
    idspec('LOGVALUE_004', TestAction(
        name="-2 * 3 == -6",
        action=lambda: float(LogValue.from_float(-2.0) * LogValue.from_float(3.0)),
        validate_result=_close(-6.0))),
    idspec('LOGVALUE_005', TestAction(
        name="huge magnitudes add in the log domain",
        action=lambda: (LogValue.from_log(5000.0) + LogValue.from_log(5000.0)).log_abs,
        validate_result=_close(5000.0 + math.log(2.0)))),
    idspec('LOGVALUE_006', TestAction(
        name="huge magnitude converts to inf",
        action=lambda: float(LogValue.from_log(5000.0)),
        expected=math.inf)),
    idspec('LOGVALUE_007', TestAction(
        name="ordering across signs",
        action=lambda: LogValue.from_float(-10.0) < LogValue.zero() < LogValue.from_float(1e-300),
        assertion=Assert.TRUE)),
    idspec('LOGVALUE_008', TestAction(
        name="negative ordering reverses magnitudes",
        action=lambda: LogValue.from_float(-10.0) < LogValue.from_float(-1.0),
        assertion=Assert.TRUE)),
    idspec('LOGVALUE_009', TestAction(
        name="division by zero",
        action=lambda: LogValue.from_float(1.0) / LogValue.zero(),
        exception=ValidationError, exception_tag=NumericsErrorTag.DIVISION_BY_ZERO)),
    idspec('LOGVALUE_010', TestAction(
        name="invalid sign",
        action=LogValue, args=[2, 0.0],
        exception=ValidationError, exception_tag=NumericsErrorTag.INVALID_SIGN)),
    idspec('LOGVALUE_011', TestAction(
        name="zero encoding mismatch",
        action=LogValue, args=[1, -math.inf],
        exception=ValidationError, exception_tag=NumericsErrorTag.ZERO_MISMATCH)),
    idspec('LOGVALUE_012', TestAction(
        name="log_sum with cancellation",
        action=lambda: float(log_sum([LogValue.from_float(x) for x in (1.0, -2.0, 4.0, 0.0)])),
        validate_result=_close(3.0))),
    idspec('LOGVALUE_013', TestAction(
        name="log_sum of nothing is zero",
        action=lambda: log_sum([]).is_zero(),
        assertion=Assert.TRUE)),
])
def test_logvalue(testspec: TestSpec) -> None:
    """Test LogValue arithmetic."""
    testspec.run()


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
@settings(max_examples=200)
def test_logvalue_add_matches_float(a: float, b: float) -> None:
    """LogValue addition agrees with float addition."""
    found = float(LogValue.from_float(a) + LogValue.from_float(b))
    assert math.isclose(found, a + b, rel_tol=1e-9, abs_tol=1e-9 * (abs(a) + abs(b)))


@pytest.mark.parametrize('testspec', [
    idspec('TREND_001', TestAction(
        name="increasing sequence is rising",
        action=lambda: tail_trend(np.arange(100.0)).trend,
        expected=Trend.RISING)),
    idspec('TREND_002', TestAction(
        name="decreasing sequence is falling",
        action=lambda: tail_trend(-np.arange(100.0)).trend,
        expected=Trend.FALLING)),
    idspec('TREND_003', TestAction(
        name="constant sequence is bounded",
        action=lambda: tail_trend(np.ones(100)).trend,
        expected=Trend.BOUNDED)),
    idspec('TREND_004', TestAction(
        name="log(k)/k is falling",
        action=lambda: tail_trend(np.log(np.arange(1.0, 101.0)) / np.arange(1.0, 101.0)).trend,
        expected=Trend.FALLING)),
    idspec('TREND_005', TestAction(
        name="isolated spikes are mixed",
        action=lambda: tail_trend(np.where(np.isin(np.arange(100), [85, 97]), 5.0, 0.0)).trend,
        expected=Trend.MIXED)),
    idspec('TREND_006', TestAction(
        name="window reported with offset",
        action=lambda: tail_trend(np.arange(100.0), start=1).window,
        expected=(76, 100))),
    idspec('TREND_007', TestAction(
        name="too few values",
        action=tail_trend, args=[[1.0, 2.0]],
        exception=ValidationError, exception_tag=NumericsErrorTag.INSUFFICIENT_POINTS)),
    idspec('TREND_008', TestAction(
        name="a tail of +inf values is rising",
        action=lambda: tail_trend(np.concatenate((np.arange(60.0), np.full(40, math.inf)))),
        validate_result=lambda r: r.trend is Trend.RISING and r.slope == math.inf)),
    idspec('TREND_009', TestAction(
        name="a tail mixing +inf and finite values is mixed",
        action=lambda: tail_trend(np.where(np.arange(100) % 2 == 0, math.inf, 1.0)).trend,
        expected=Trend.MIXED)),
])
def test_tail_trend(testspec: TestSpec) -> None:
    """Test tail-window trend detection."""
    testspec.run()


_AFFINE = 2.0 + 3.0 * np.arange(20.0)


@pytest.mark.parametrize('testspec', [
    idspec('FIT_001', TestAction(
        name="affine residual recovers log_h",
        action=lambda: fit_growth(_AFFINE, np.zeros(20)).log_h,
        validate_result=_close(3.0, 1e-12))),
    idspec('FIT_002', TestAction(
        name="affine residual recovers log_c",
        action=lambda: fit_growth(_AFFINE, np.zeros(20)).log_c,
        validate_result=_close(2.0, 1e-12))),
    idspec('FIT_003', TestAction(
        name="fit is exact: residual zero at the binding index",
        action=lambda: fit_growth(np.sin(np.arange(30.0)), np.zeros(30)).max_residual,
        expected=0.0)),
    idspec('FIT_004', TestAction(
        name="convex residual drifts upwards",
        action=lambda: fit_growth(np.arange(40.0) ** 2, np.zeros(40)).drift,
        assertion=Assert.GREATER_THAN, expected=0.5)),
    idspec('FIT_005', TestAction(
        name="linear residual is stable",
        action=lambda: fit_growth(_AFFINE, np.zeros(20)).stable(),
        assertion=Assert.TRUE)),
    idspec('FIT_006', TestAction(
        name="infinite data gives an infinite fit",
        action=lambda: fit_growth([0.0, 1.0, math.inf, 2.0], np.zeros(4)).finite,
        assertion=Assert.FALSE)),
    idspec('FIT_007', TestAction(
        name="-inf points do not constrain",
        action=lambda: fit_growth([0.0, -math.inf, 2.0, 3.0], np.zeros(4)).log_h,
        validate_result=_close(1.0))),
    idspec('FIT_008', TestAction(
        name="length mismatch",
        action=fit_growth, args=[np.zeros(5), np.zeros(6)],
        exception=ValidationError, exception_tag=NumericsErrorTag.LENGTH_MISMATCH)),
    idspec('FIT_009', TestAction(
        name="NaN data",
        action=fit_growth, args=[[0.0, math.nan, 1.0, 2.0], np.zeros(4)],
        exception=ValidationError, exception_tag=NumericsErrorTag.NAN_IN_DATA)),
    idspec('FIT_010', TestAction(
        name="too few points",
        action=fit_growth, args=[[0.0, 1.0], [0.0, 0.0]],
        exception=ValidationError, exception_tag=NumericsErrorTag.INSUFFICIENT_POINTS)),
    idspec('FIT_011', TestAction(
        name="geometric upper fit",
        action=lambda: fit_geometric_upper(0.7 * np.arange(1.0, 21.0), np.zeros(20)).log_h,
        validate_result=_close(0.7, 1e-12))),
    idspec('FIT_012', TestAction(
        name="geometric upper fit residual is never positive",
        action=lambda: fit_geometric_upper(np.cos(np.arange(25.0)) * 3.0, np.zeros(25)).max_residual,
        assertion=Assert.LESS_THAN_OR_EQUAL, expected=0.0)),
    idspec('FIT_013', TestAction(
        name="geometric lower fit residual is never positive",
        action=lambda: fit_geometric_lower(np.cos(np.arange(25.0)) * 3.0, np.zeros(25)).max_residual,
        assertion=Assert.LESS_THAN_OR_EQUAL, expected=0.0)),
    idspec('FIT_014', TestAction(
        name="check_growth reports a violated bound",
        action=check_growth, args=[[0.0, 1.0, 5.0, 3.0], [0.0, 0.0, 0.0, 0.0], 0.0, 1.0],
        validate_result=_close(3.0))),
])
def test_growth_fit(testspec: TestSpec) -> None:
    """Test growth fits."""
    testspec.run()


@given(st.lists(st.floats(-50.0, 50.0), min_size=4, max_size=40))
@settings(max_examples=200)
def test_fit_growth_is_an_upper_bound(values: list[float]) -> None:
    """The fitted line dominates every point."""
    fit = fit_growth(values, np.zeros(len(values)))
    assert fit.max_residual <= 0.0
    assert check_growth(values, 0.0, fit.log_c, fit.log_h) <= 0.0


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_fit_growth_matches_linear_program(seed: int) -> None:
    """The fit is the supporting line lowest just inside the last index."""
    rng = np.random.default_rng(seed)
    values = np.cumsum(rng.normal(size=30))
    fit = fit_growth(values, np.zeros(30))
    ks = np.arange(30.0)
    program = linprog(c=[1.0, 28.5], A_ub=np.column_stack((-np.ones(30), -ks)), b_ub=-values,
                      bounds=[(None, None), (None, None)])
    assert program.success
    assert math.isclose(fit.log_c + 28.5 * fit.log_h, program.fun, rel_tol=1e-7, abs_tol=1e-7)


def _log_factorial_profile(t: np.ndarray) -> np.ndarray:
    log_m = gammaln(np.arange(31.0) + 1.0)
    log_t = np.log(np.maximum(np.asarray(t, dtype=float), 1e-300))
    return np.exp(-np.max(np.arange(31.0)[None, :] * np.atleast_1d(log_t)[:, None] - log_m[None, :], axis=1))


@pytest.mark.parametrize('testspec', [
    idspec('PIECEWISE_001', TestAction(
        name="flat table: 1/3 + 1/7",
        action=lambda: float(integrate_piecewise_power(_ZEROS_TABLE, 2.0)),
        validate_result=_close(1.0 / 3.0 + 1.0 / 7.0))),
    idspec('PIECEWISE_002', TestAction(
        name="doubling table: 4/2 + 4/3",
        action=lambda: float(integrate_piecewise_power(_DOUBLING_TABLE, 1.0)),
        validate_result=_close(2.0 + 4.0 / 3.0))),
    idspec('PIECEWISE_003', TestAction(
        name="lower limit removes the first cell",
        action=lambda: float(integrate_piecewise_power(_ZEROS_TABLE, 2.0, lower=1.0)),
        validate_result=_close(1.0 / 7.0))),
    idspec('PIECEWISE_004', TestAction(
        name="truncation too short for the power",
        action=integrate_piecewise_power, args=[np.zeros(3), 1.0],
        exception=TailDivergent, exception_tag=NumericsErrorTag.TAIL_DIVERGENT)),
    idspec('PIECEWISE_005', TestAction(
        name="negative lower limit",
        action=integrate_piecewise_power, args=[_ZEROS_TABLE, 1.0, -1.0],
        exception=ValidationError, exception_tag=NumericsErrorTag.NEGATIVE_LOWER_LIMIT)),
    idspec('PIECEWISE_006', TestAction(
        name="factorial table agrees with adaptive quadrature",
        action=lambda: float(integrate_piecewise_power(gammaln(np.arange(31.0) + 1.0), 2.0)),
        validate_result=_close(
            quad(lambda t: t * t * _log_factorial_profile(np.array([t]))[0], 0.0, 200.0,
                 points=list(range(1, 31)), limit=500, epsabs=0.0, epsrel=1e-11)[0], 1e-7))),
    idspec('PIECEWISE_007', TestAction(
        name="cap inside the tail cell leaves the requested remainder",
        action=lambda: float(integrate_piecewise_power(
            _DOUBLING_TABLE, 1.0, lower=power_integral_cap(_DOUBLING_TABLE, 1.0, 1e-3))),
        validate_result=_close(1e-3 * (2.0 + 4.0 / 3.0), 1e-9))),
])
def test_piecewise_power(testspec: TestSpec) -> None:
    """Test closed-form piecewise-power integrals."""
    testspec.run()


def _doubling_profile(t: np.ndarray) -> np.ndarray:
    return t * np.minimum(1.0, 32.0 / np.maximum(t, 1e-300) ** 5)


@pytest.mark.parametrize('testspec', [
    idspec('OSCILLATORY_001', TestAction(
        name="Laplace transform of exp(-t), real part",
        action=lambda: float(integrate_oscillatory(lambda t: np.exp(-t), 3.0, [0.0, 1.0, 60.0])[0]),
        validate_result=_close(0.1, 1e-10))),
    idspec('OSCILLATORY_002', TestAction(
        name="Laplace transform of exp(-t), imaginary part",
        action=lambda: float(integrate_oscillatory(lambda t: np.exp(-t), 3.0, [0.0, 1.0, 60.0])[1]),
        validate_result=_close(0.3, 1e-10))),
    idspec('OSCILLATORY_003', TestAction(
        name="zero frequency matches the closed form",
        action=lambda: float(integrate_oscillatory(
            _doubling_profile, 0.0, [0.0, 2.0, power_integral_cap(_DOUBLING_TABLE, 1.0, 1e-14)])[0]),
        validate_result=_close(2.0 + 4.0 / 3.0, 1e-9))),
    idspec('OSCILLATORY_004', TestAction(
        name="non-decaying profile",
        action=integrate_oscillatory, args=[np.ones_like, 1.0, [0.0, 10.0]],
        exception=TailDivergent, exception_tag=NumericsErrorTag.NON_DECAYING_PROFILE)),
    idspec('OSCILLATORY_005', TestAction(
        name="log scale multiplies the result",
        action=lambda: integrate_oscillatory(lambda t: np.exp(-t), 0.0, [0.0, 60.0], log_scale=100.0)[0].log_abs,
        validate_result=_close(100.0, 1e-12))),
    idspec('OSCILLATORY_006', TestAction(
        name="pieces are at most a quarter period long",
        action=lambda: np.max(np.diff(oscillatory_nodes(10.0, [1.0, 2.0], nodes=2)[0][::2])),
        assertion=Assert.LESS_THAN_OR_EQUAL, expected=math.pi / 20.0 + 1e-12)),
    idspec('OSCILLATORY_007', TestAction(
        name="invalid breakpoints",
        action=oscillatory_nodes, args=[1.0, [1.0]],
        exception=ValidationError, exception_tag=NumericsErrorTag.INVALID_BREAKPOINTS)),
    idspec('OSCILLATORY_008', TestAction(
        name="node budget",
        action=oscillatory_nodes, args=[1e9, [0.0, 1e3]],
        exception=BudgetExceeded, exception_tag=NumericsErrorTag.QUADRATURE_BUDGET)),
])
def test_oscillatory(testspec: TestSpec) -> None:
    """Test the oscillatory integrator."""
    testspec.run()


_X = ExpressionProfile.var(0)
_Y = ExpressionProfile.var(1)


def _falling(p: float, n: int) -> float:
    return math.prod(p - i for i in range(n))


@pytest.mark.parametrize('testspec', [
    idspec('JETS_001', TestAction(
        name="exp(x*y) along x at (1, 2)",
        action=lambda: taylor_derivatives((_X * _Y).exp(), [1.0, 2.0], [1.0, 0.0], 8).derivative(7),
        validate_result=_close(2.0 ** 7 * math.exp(2.0), 1e-10))),
    idspec('JETS_002', TestAction(
        name="1/(1+x) derivatives",
        action=lambda: taylor_derivatives((_X + 1.0).recip(), [0.0], [1.0], 10).derivative(9),
        validate_result=_close(-math.factorial(9), 1e-10))),
    idspec('JETS_003', TestAction(
        name="sqrt(1+x) derivatives",
        action=lambda: taylor_derivatives((_X + 1.0).power(0.5), [0.0], [1.0], 6).derivative(5),
        validate_result=_close(_falling(0.5, 5), 1e-10))),
    idspec('JETS_004', TestAction(
        name="direction scales derivatives",
        action=lambda: taylor_derivatives(_X.exp(), [0.0], [2.0], 5).derivative(5),
        validate_result=_close(32.0, 1e-12))),
    idspec('JETS_005', TestAction(
        name="multivariate exp(x+y) has unit derivatives",
        action=lambda: MultiJets(2, 6).derivative(
            MultiJets(2, 6).exp(MultiJets(2, 6).variable(0.0, 0) + MultiJets(2, 6).variable(0.0, 1)), (2, 3)),
        validate_result=_close(1.0, 1e-12))),
    idspec('JETS_006', TestAction(
        name="multivariate reciprocal agrees with univariate",
        action=lambda: MultiJets(1, 8).reciprocal(MultiJets(1, 8).variable(2.0, 0)),
        validate_result=lambda found: np.allclose(
            found, UnivariateJets(8).reciprocal(UnivariateJets(8).variable(2.0)), rtol=1e-13))),
    idspec('JETS_007', TestAction(
        name="multivariate power agrees with univariate",
        action=lambda: MultiJets(1, 8).power(MultiJets(1, 8).variable(3.0, 0), -1.5),
        validate_result=lambda found: np.allclose(
            found, UnivariateJets(8).power(UnivariateJets(8).variable(3.0), -1.5), rtol=1e-13))),
    idspec('JETS_008', TestAction(
        name="graded multi-indices",
        action=multi_indices, args=[2, 2],
        expected=((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)))),
    idspec('JETS_009', TestAction(
        name="order out of range",
        action=UnivariateJets, args=[1000],
        exception=ValidationError, exception_tag=NumericsErrorTag.ORDER_OUT_OF_RANGE)),
    idspec('JETS_010', TestAction(
        name="dimension mismatch",
        action=taylor_derivatives, args=[_X, [0.0, 1.0], [1.0, 0.0], 3],
        exception=ValidationError, exception_tag=NumericsErrorTag.DIMENSION_MISMATCH)),
])
def test_jets(testspec: TestSpec) -> None:
    """Test jet arithmetic and directional derivatives."""
    testspec.run()


_BUMP = BumpProfile(0.5, 1.0, 2)


@pytest.mark.parametrize('testspec', [
    idspec('BUMP_001', TestAction(
        name="one inside the inner radius",
        action=lambda: float(_BUMP([[0.1, 0.2]])[0]),
        expected=1.0)),
    idspec('BUMP_002', TestAction(
        name="zero outside the outer radius",
        action=lambda: float(_BUMP([[1.0, 0.5]])[0]),
        expected=0.0)),
    idspec('BUMP_003', TestAction(
        name="one half in the middle of the band",
        action=lambda: float(_BUMP([[0.75, 0.0]])[0]),
        validate_result=_close(0.5, 1e-12))),
    idspec('BUMP_004', TestAction(
        name="decreasing along a ray",
        action=lambda: np.diff(_BUMP(np.column_stack((np.linspace(0.6, 0.9, 50), np.zeros(50))))),
        validate_result=lambda found: bool(np.all(found < 0.0)))),
    idspec('BUMP_005', TestAction(
        name="first derivative agrees with a central difference",
        action=lambda: taylor_derivatives(_BUMP, [0.6, 0.3], [0.6, -0.8], 3).derivative(1),
        validate_result=_close(
            (float(_BUMP([[0.6 + 0.6e-6, 0.3 - 0.8e-6]])[0]) - float(_BUMP([[0.6 - 0.6e-6, 0.3 + 0.8e-6]])[0]))
            / 2e-6, 1e-5))),
    idspec('BUMP_006', TestAction(
        name="invalid radius",
        action=BumpProfile, args=[0.0, 1.0, 2],
        exception=ValidationError, exception_tag=NumericsErrorTag.INVALID_PROFILE)),
])
def test_bump(testspec: TestSpec) -> None:
    """Test the radial cut-off profile."""
    testspec.run()


if __name__ == '__main__':
    pytest.main([__file__, "--log-cli-level=INFO", '-s'])
