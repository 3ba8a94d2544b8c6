"""Numerical substrate: log-domain values, growth fits, trend tests, integrators and jets."""
from ._error_tags import NumericsErrorTag
from ._growth_fit import GrowthFit, check_growth, fit_geometric_lower, fit_geometric_upper, fit_growth
from ._integrate import (
    integrate_oscillatory,
    integrate_piecewise_power,
    oscillatory_nodes,
    piecewise_power_cells,
    piecewise_power_tail,
    power_integral_cap,
)
from ._jets import JetAlgebra, MultiJets, UnivariateJets, multi_indices
from ._logvalue import LogValue, log_sum
from ._profiles import BumpProfile, ExpressionProfile, Profile, ProfileOp, TaylorJet, taylor_derivatives
from ._trend import TailTrend, Trend, tail_trend

__all__ = [
    "BumpProfile",
    "ExpressionProfile",
    "GrowthFit",
    "JetAlgebra",
    "LogValue",
    "MultiJets",
    "NumericsErrorTag",
    "Profile",
    "ProfileOp",
    "TailTrend",
    "TaylorJet",
    "Trend",
    "UnivariateJets",
    "check_growth",
    "fit_geometric_lower",
    "fit_geometric_upper",
    "fit_growth",
    "integrate_oscillatory",
    "integrate_piecewise_power",
    "log_sum",
    "multi_indices",
    "oscillatory_nodes",
    "piecewise_power_cells",
    "piecewise_power_tail",
    "power_integral_cap",
    "tail_trend",
    "taylor_derivatives",
]
