"""Tests for the flat kernel and its moments."""
# pylint: disable=import-error,wrong-import-position
import io
import logging
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings
from scipy.integrate import quad
from scipy.special import gammaln
from testspec import Assert, TestAction, TestSpec, idspec

from ultravec import ArgumentTypeError, TailDivergent, TruncationExceeded, ValidationError
from ultravec._assocweight import AssocWeightErrorTag
from ultravec._error_tags import ArgumentErrorTag
from ultravec._kernel import (
    MOMENT_CSV_COLUMNS,
    FlatKernel,
    KernelErrorTag,
    effective_cap,
    kernel_value,
    kernel_values,
    moment,
    moment_rows,
    moment_tail,
    pointwise_bounds,
    prefix_moment,
    scale_covariance_check,
    verify_moment_sandwich,
    write_moments_csv,
)
from ultravec._numerics import Trend, integrate_piecewise_power
from ultravec._weightseq import Verdict, make_gevrey, make_qpower

log = logging.getLogger(__name__)

G2 = make_gevrey(2.0, 64)
G3 = make_gevrey(3.0, 64)
Q22 = make_qpower(2.0, 2.0, 64)
Q23 = make_qpower(2.0, 3.0, 64)

F_G2 = FlatKernel(G2)
F_G3 = FlatKernel(G3)
F_Q22 = FlatKernel(Q22)
F_G2_LONG = FlatKernel(make_gevrey(2.0, 256))
F_G3_LONG = FlatKernel(make_gevrey(3.0, 128))


def _close(expected: float, rel: float = 1e-12, abs_tol: float = 1e-12):
    return lambda found: math.isclose(float(found), expected, rel_tol=rel, abs_tol=abs_tol)


def _quad_moment(kernel: FlatKernel, k: int) -> float:
    cap = effective_cap(kernel, float(k))
    kinks = [float(x) for x in np.exp(kernel.weight.breakpoints) if 0.0 < x < cap]

    def integrand(t: float) -> float:
        if t <= 0.0:
            return 1.0 if k == 0 else 0.0
        return t ** k * float(kernel_value(kernel, math.log(t)))

    value, _ = quad(integrand, 0.0, cap, points=kinks, limit=1000, epsabs=0.0, epsrel=1e-12)
    return value


@pytest.mark.parametrize('testspec', [
    idspec('KERNEL_001', TestAction(
        name="the kernel is 1 below the first breakpoint",
        action=lambda: kernel_value(F_G2, -1.0).log_abs,
        assertion=Assert.EQUAL, expected=0.0)),
    idspec('KERNEL_002', TestAction(
        name="Gevrey(3) kernel at t = 1000 matches a scan of min t^-k N_k",
        action=lambda: kernel_value(F_G3, math.log(1000.0)).log_abs,
        validate_result=_close(min(-k * math.log(1000.0) + 3.0 * float(gammaln(k + 1.0)) for k in range(65))))),
    idspec('KERNEL_003', TestAction(
        name="the kernel is positive and at most 1",
        action=lambda: kernel_values(F_Q22, np.linspace(-2.0, F_Q22.weight.domain_cap, 101)),
        validate_result=lambda values: bool(np.all(values <= 0.0)) and bool(np.all(np.isfinite(values))))),
    idspec('KERNEL_004', TestAction(
        name="the pointwise estimates hold with equality and constants 1",
        action=lambda: pointwise_bounds(F_G2, 3.0),
        validate_result=lambda b: b.lower == b.value == b.upper)),
    idspec('KERNEL_005', TestAction(
        name="the recorded pointwise constants are 1",
        action=lambda: (F_G2.lower_constants, F_G2.upper_constants),
        assertion=Assert.EQUAL, expected=((1.0, 1.0), (1.0, 1.0)))),
    idspec('KERNEL_006', TestAction(
        name="evaluation beyond mu_K propagates the truncation error",
        action=kernel_value, args=[F_G2, 20.0],
        exception=TruncationExceeded, exception_tag=AssocWeightErrorTag.BEYOND_DOMAIN)),
    idspec('KERNEL_007', TestAction(
        name="the kernel needs a weight sequence",
        action=FlatKernel, args=[[0.0, 0.0, 1.0]],
        exception=ArgumentTypeError, exception_tag=KernelErrorTag.NOT_A_WEIGHT_SEQUENCE)),
])
def test_kernel_value(testspec: TestSpec) -> None:
    """Test the kernel and its pointwise estimates."""
    testspec.run()


def _rebind_seq() -> None:
    F_G2.seq = G3  # type: ignore[misc]


def test_kernel_is_immutable() -> None:
    """Attributes cannot be rebound after construction."""
    with pytest.raises(AttributeError):
        _rebind_seq()


@given(st.floats(-2.0, 8.0), st.floats(-2.0, 8.0))
@settings(max_examples=200, deadline=None)
def test_kernel_is_non_increasing(first: float, second: float) -> None:
    """log Phi does not increase with t."""
    low, high = min(first, second), max(first, second)
    assert kernel_value(F_G2, high).log_abs <= kernel_value(F_G2, low).log_abs


@pytest.mark.parametrize('testspec', [
    idspec('MOMENT_001', TestAction(
        name="lower limits 0 and 1 differ by the prefix 1/(k+1)",
        action=lambda: float(moment(F_G2_LONG, 2)) - float(moment(F_G2_LONG, 2, 1.0)),
        validate_result=_close(1.0 / 3.0, rel=1e-9))),
    idspec('MOMENT_002', TestAction(
        name="the prefix on [0, 1] is exactly 1/(k+1)",
        action=lambda: prefix_moment(F_G2, 5).log_abs,
        validate_result=_close(-math.log(6.0)))),
    idspec('MOMENT_003', TestAction(
        name="the prefix on [0, 1] is 1/(k+1) when mu_1 exceeds 1",
        action=lambda: float(prefix_moment(F_Q22, 4)),
        validate_result=_close(0.2, rel=1e-12))),
    idspec('MOMENT_004', TestAction(
        name="the prefix on [0, 3] of Gevrey(2) adds the integral of t^(k-1)",
        action=lambda: float(prefix_moment(F_G2, 2, 3.0)),
        validate_result=_close(1.0 / 3.0 + 4.0, rel=1e-12))),
    idspec('MOMENT_005', TestAction(
        name="moments are cached",
        action=lambda: moment(F_G2_LONG, 7) is not None and moment(F_G2_LONG, 7) == moment(F_G2_LONG, 7),
        assertion=Assert.TRUE)),
    idspec('MOMENT_006', TestAction(
        name="the remainder beyond mu_K is below 1e-10 of the moment",
        action=lambda: moment_tail(F_G2_LONG, 30) - moment(F_G2_LONG, 30).log_abs,
        validate_result=lambda share: share <= math.log(1e-10))),
    idspec('MOMENT_007', TestAction(
        name="moments need 16 cells beyond the order",
        action=moment, args=[F_G2, 50],
        exception=TailDivergent, exception_tag=KernelErrorTag.TAIL_MARGIN_TOO_SHORT)),
    idspec('MOMENT_008', TestAction(
        name="moments with a large remainder are rejected",
        action=moment, args=[F_G2, 40],
        exception=TailDivergent, exception_tag=KernelErrorTag.TAIL_NOT_CERTIFIED)),
    idspec('MOMENT_009', TestAction(
        name="the effective cap leaves at most rel_tol of the moment",
        action=lambda: (integrate_piecewise_power(G2, 2.0, effective_cap(F_G2, 2.0, 1e-8)).log_abs
                        - moment(F_G2, 2).log_abs),
        validate_result=lambda gap: gap <= math.log(1e-8) + 1e-9)),
])
def test_moment(testspec: TestSpec) -> None:
    """Test the closed-form moments."""
    testspec.run()


@pytest.mark.parametrize('kernel, k', [
    *[pytest.param(F_G2_LONG, k, id=f'G2-{k}') for k in (0, 1, 2, 3, 5, 8, 12, 17, 23, 30)],
    *[pytest.param(F_G3_LONG, k, id=f'G3-{k}') for k in (0, 1, 2, 4, 6, 9, 13, 18, 24, 30)],
])
def test_moment_matches_quadrature(kernel: FlatKernel, k: int) -> None:
    """The closed form agrees with adaptive quadrature."""
    exact = float(moment(kernel, k))
    assert math.isclose(exact, _quad_moment(kernel, k), rel_tol=1e-8)


@pytest.mark.parametrize('testspec', [
    idspec('SANDWICH_001', TestAction(
        name="Gevrey(2) has both moment constants",
        action=lambda: verify_moment_sandwich(F_G2_LONG, 30),
        validate_result=lambda r: (r.verdict is Verdict.HOLDS and r.lower.finite and r.upper.finite
                                   and r.lower.log_c <= r.upper.log_c and r.consistent))),
    idspec('SANDWICH_002', TestAction(
        name="the lower fit is exact at its binding index",
        action=lambda: verify_moment_sandwich(F_G2_LONG, 30).lower.max_residual,
        validate_result=lambda residual: -1e-12 <= residual <= 0.0)),
    idspec('SANDWICH_003', TestAction(
        name="gamma and derivation closedness are recorded",
        action=lambda: verify_moment_sandwich(F_G2_LONG, 30),
        validate_result=lambda r: r.gamma == 2.0 and r.derivation_closed is Verdict.HOLDS and r.kmax == 30)),
    idspec('SANDWICH_004', TestAction(
        name="QPower(2, 3) has a lower constant and a rising upper ratio",
        action=lambda: verify_moment_sandwich(FlatKernel(Q23), 30),
        validate_result=lambda r: (r.lower.finite and r.upper_trend.trend is Trend.RISING
                                   and r.verdict is Verdict.FAILS and r.derivation_closed is Verdict.FAILS
                                   and r.consistent))),
    idspec('SANDWICH_005', TestAction(
        name="Gevrey(3) has both moment constants with non-positive residuals",
        action=lambda: verify_moment_sandwich(F_G3_LONG, 30),
        validate_result=lambda r: (r.verdict is Verdict.HOLDS and r.lower.finite and r.upper.finite
                                   and r.lower.max_residual <= 0.0 and r.upper.max_residual <= 0.0
                                   and r.gamma == 3.0 and r.derivation_closed is Verdict.HOLDS))),
    idspec('SANDWICH_006', TestAction(
        name="orders above 40 are rejected",
        action=verify_moment_sandwich, args=[F_G2_LONG, 41],
        exception=ValidationError, exception_tag=ArgumentErrorTag.INTEGER_TOO_LARGE)),
])
def test_moment_sandwich(testspec: TestSpec) -> None:
    """Test the two-sided moment estimate."""
    testspec.run()


def test_scale_covariance() -> None:
    """Rescaling N by 2^k multiplies I_k by 2^(k+1)."""
    report = scale_covariance_check(F_G2_LONG, math.log(2.0), kmax=20)
    assert report.holds
    assert report.max_discrepancy <= 1e-10


def test_moment_csv() -> None:
    """The moment table is written with its header and one line per order."""
    rows = moment_rows(F_G2_LONG, 5)
    stream = io.StringIO()
    write_moments_csv(rows, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ','.join(MOMENT_CSV_COLUMNS)
    assert len(lines) == 7
    k, log_i, log_n, log_ratio, _ = lines[3].split(',')
    assert int(k) == 2
    assert math.isclose(float(log_i) - float(log_n), float(log_ratio), rel_tol=1e-12, abs_tol=1e-12)


if __name__ == '__main__':
    pytest.main([__file__, "--log-cli-level=INFO", '-s'])
