"""The flat kernel, its moments and the moment sandwich."""
from ._error_tags import KernelErrorTag
from ._flat import (
    FlatKernel,
    PointwiseBounds,
    effective_cap,
    kernel_value,
    kernel_values,
    moment,
    moment_tail,
    pointwise_bounds,
    prefix_moment,
)
from ._moments import (
    MOMENT_CSV_COLUMNS,
    MomentRow,
    MomentSandwich,
    ScaleCovariance,
    moment_rows,
    scale_covariance_check,
    verify_moment_sandwich,
    write_moments_csv,
)

__all__ = [
    "MOMENT_CSV_COLUMNS",
    "FlatKernel",
    "KernelErrorTag",
    "MomentRow",
    "MomentSandwich",
    "PointwiseBounds",
    "ScaleCovariance",
    "effective_cap",
    "kernel_value",
    "kernel_values",
    "moment",
    "moment_rows",
    "moment_tail",
    "pointwise_bounds",
    "prefix_moment",
    "scale_covariance_check",
    "verify_moment_sandwich",
    "write_moments_csv",
]
