"""Operators, the vector u with its iterates, and the checks of their growth."""
from ._bump import BumpFunction, bump_axis_derivatives, bump_derivatives, build_bump, default_flatness
from ._construction import (
    GridKind,
    IterateValues,
    XGrid,
    directional_derivative_at_center,
    evaluate_iterate,
    evaluate_iterates,
    evaluate_u,
    patch_grid,
    point_grid,
    segment_grid,
)
from ._error_tags import MetivierErrorTag
from ._instance import (
    AbstractRegime,
    GammaFiniteRegime,
    GammaInfiniteRegime,
    MetivierInstance,
    Regime,
    RegimeKind,
    RegimeParameters,
    instance_to_descriptor,
    resolve_regime,
    select_parameters,
)
from ._iterates import (
    CutoffTable,
    IterateTerm,
    IterateTermSum,
    band_samples,
    common_axis,
    cutoff_table,
    differentiate_terms,
    iterate_terms,
    recursion_consistency,
)
from ._nonelliptic import (
    NonEllipticPoint,
    SymbolBound,
    ball_offsets,
    check_symbol_shrinking_bound,
    find_nonelliptic_point,
    require_nonelliptic,
)
from ._operator import (
    DiffOperator,
    MultiIndex,
    Polynomial,
    coefficient_bound,
    derivative_operator,
    laplacian,
    operator_from_descriptor,
    operator_to_descriptor,
)
from ._verify import (
    CrossingIndex,
    DivergenceWitness,
    DominanceReport,
    EnvelopeKind,
    EnvelopeReport,
    LastEstimate,
    LowerBoundChain,
    OptimalityReport,
    VectorGrowth,
    divergence_witness,
    envelope_dominance,
    envelope_log,
    last_estimate_fit,
    lower_bound_chain,
    optimality_report,
    verify_last_estimate,
    verify_Qk_envelope,
    verify_vector_growth,
)

__all__ = [
    "AbstractRegime",
    "BumpFunction",
    "CrossingIndex",
    "CutoffTable",
    "DiffOperator",
    "DivergenceWitness",
    "DominanceReport",
    "EnvelopeKind",
    "EnvelopeReport",
    "GammaFiniteRegime",
    "GammaInfiniteRegime",
    "GridKind",
    "IterateTerm",
    "IterateTermSum",
    "IterateValues",
    "LastEstimate",
    "LowerBoundChain",
    "MetivierErrorTag",
    "MetivierInstance",
    "MultiIndex",
    "NonEllipticPoint",
    "OptimalityReport",
    "Polynomial",
    "Regime",
    "RegimeKind",
    "RegimeParameters",
    "SymbolBound",
    "VectorGrowth",
    "XGrid",
    "ball_offsets",
    "band_samples",
    "build_bump",
    "bump_axis_derivatives",
    "bump_derivatives",
    "check_symbol_shrinking_bound",
    "coefficient_bound",
    "common_axis",
    "cutoff_table",
    "default_flatness",
    "derivative_operator",
    "differentiate_terms",
    "directional_derivative_at_center",
    "divergence_witness",
    "envelope_dominance",
    "envelope_log",
    "evaluate_iterate",
    "evaluate_iterates",
    "evaluate_u",
    "find_nonelliptic_point",
    "instance_to_descriptor",
    "iterate_terms",
    "last_estimate_fit",
    "laplacian",
    "lower_bound_chain",
    "operator_from_descriptor",
    "operator_to_descriptor",
    "optimality_report",
    "patch_grid",
    "point_grid",
    "recursion_consistency",
    "require_nonelliptic",
    "resolve_regime",
    "segment_grid",
    "select_parameters",
    "verify_Qk_envelope",
    "verify_last_estimate",
    "verify_vector_growth",
]
