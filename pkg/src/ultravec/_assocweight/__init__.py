"""Associated weights: exact evaluation, inversion and the equivalence checks."""
from ._checks import (
    AuxEquivalence,
    OmegaComparison,
    PowerScalingReport,
    ShiftReport,
    aux_equivalence,
    aux_shift_check,
    compare_omegas,
    power_scaling_check,
)
from ._error_tags import AssocWeightErrorTag
from ._weight import AssociatedWeight, h_weight, invert_weight, omega, omega_values, required_truncation

__all__ = [
    "AssocWeightErrorTag",
    "AssociatedWeight",
    "AuxEquivalence",
    "OmegaComparison",
    "PowerScalingReport",
    "ShiftReport",
    "aux_equivalence",
    "aux_shift_check",
    "compare_omegas",
    "h_weight",
    "invert_weight",
    "omega",
    "omega_values",
    "power_scaling_check",
    "required_truncation",
]
