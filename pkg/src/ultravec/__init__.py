"""Weight sequences, flat kernels and ultradifferentiable vectors of non-elliptic operators."""
from ._assocweight import AssociatedWeight, aux_equivalence, omega, omega_values
from ._exceptions import (
    ArgumentTypeError,
    BudgetExceeded,
    ConfigError,
    ErrorTag,
    InfeasibleParameters,
    TailDivergent,
    TaggedException,
    TruncationExceeded,
    ValidationError,
)
from ._kernel import FlatKernel, moment, verify_moment_sandwich
from ._metivier import (
    AbstractRegime,
    DiffOperator,
    GammaFiniteRegime,
    GammaInfiniteRegime,
    MetivierInstance,
    derivative_operator,
    directional_derivative_at_center,
    evaluate_iterate,
    evaluate_u,
    find_nonelliptic_point,
    iterate_terms,
    laplacian,
    select_parameters,
    verify_last_estimate,
    verify_Qk_envelope,
    verify_vector_growth,
)
from ._numerics import GrowthFit, LogValue, fit_growth
from ._weightseq import (
    OrderRelation,
    Verdict,
    WeightSequence,
    classify,
    gamma_index,
    make_gevrey,
    make_logpower,
    make_qpower,
    order_relation,
    power,
    product,
)

__all__ = [
    "AbstractRegime",
    "ArgumentTypeError",
    "AssociatedWeight",
    "BudgetExceeded",
    "ConfigError",
    "DiffOperator",
    "ErrorTag",
    "FlatKernel",
    "GammaFiniteRegime",
    "GammaInfiniteRegime",
    "GrowthFit",
    "InfeasibleParameters",
    "LogValue",
    "MetivierInstance",
    "OrderRelation",
    "TailDivergent",
    "TaggedException",
    "TruncationExceeded",
    "ValidationError",
    "Verdict",
    "WeightSequence",
    "aux_equivalence",
    "classify",
    "derivative_operator",
    "directional_derivative_at_center",
    "evaluate_iterate",
    "evaluate_u",
    "find_nonelliptic_point",
    "fit_growth",
    "gamma_index",
    "iterate_terms",
    "laplacian",
    "make_gevrey",
    "make_logpower",
    "make_qpower",
    "moment",
    "omega",
    "omega_values",
    "order_relation",
    "power",
    "product",
    "select_parameters",
    "verify_Qk_envelope",
    "verify_last_estimate",
    "verify_moment_sandwich",
    "verify_vector_growth",
]
