"""Numeric policy constants shared across ultravec.

Every tolerance, grid size and budget the library uses is defined here so reports can
record them and tests can refer to them by name.
"""
from typing import Final

DEFAULT_TRUNCATION: Final[int] = 2048
"""Default truncation order K of a weight sequence table."""

MIN_TRUNCATION: Final[int] = 2
"""Smallest truncation order accepted by the sequence constructors."""

LOG_CONVEXITY_TOL: Final[float] = 1e-12
"""Absolute tolerance on second differences of log M_k, beyond their rounding error."""

TAIL_WINDOW_FRACTION: Final[float] = 0.25
"""Fraction of trailing indices inspected by tail-trend statistics."""

TAIL_SUBWINDOWS: Final[int] = 4
"""Number of sub-windows the tail window is split into."""

TREND_SLOPE_TOL: Final[float] = 1e-6
"""Per-index slope a tail trend must exceed to count as rising or falling."""

GROWTH_DRIFT_TOL: Final[float] = 0.5
"""Largest increase of a fitted log h between the half prefix and the full range
that still counts as a stable fit."""

BUMP_DRIFT_TOL: Final[float] = 0.25
"""Stability threshold for the cut-off derivative fit."""

FIT_GRID_POINTS: Final[int] = 512
"""Points of the geometric grid used to fit the constants of omega inequalities."""

SEGMENT_POINTS: Final[int] = 401
"""Points of an x-segment through x0 along xi0."""

PATCH_POINTS: Final[int] = 41
"""Points per side of a planar x-patch around x0."""

CELL_T_POINTS: Final[int] = 64
"""t-samples per kernel cell for envelope grids."""

MAX_JET_ORDER: Final[int] = 64
"""Largest derivative order carried by a jet."""

TERM_BUDGET: Final[int] = 1_000_000
"""Largest number of terms an iterate expansion may hold."""

MOMENT_TAIL_MARGIN: Final[int] = 16
"""Cells the truncation must extend beyond the moment power."""

MOMENT_TAIL_REL_TOL: Final[float] = 1e-10
"""Largest admissible ratio of the certified tail to the total moment."""

CAP_REL_TOL: Final[float] = 1e-14
"""Relative kernel tail dropped beyond the effective integration cap."""

GAMMA_MAX: Final[float] = 64.0
"""Upper end of the bisection bracket of the gamma index."""

GAMMA_TOL: Final[float] = 0.05
"""Default bracket width of the gamma index estimate."""

GAMMA_MIN_TRUNCATION: Final[int] = 256
"""Smallest truncation the gamma estimator accepts."""

GAMMA_SLACK: Final[float] = 1e-9
"""Drawdown growth tolerated by the almost-increasing test."""

NONELLIPTIC_RESIDUAL_TOL: Final[float] = 1e-8
"""Largest |p_d|^2 accepted as a non-ellipticity witness."""

NONELLIPTIC_SYMBOL_TOL: Final[float] = 1e-10
"""Largest |p_d(x0, xi0)| accepted by a Metivier instance."""

BUMP_MAX_ORDER: Final[int] = 20
"""Derivative order up to which the cut-off bound is fitted."""

GAUSS_LEGENDRE_NODES: Final[int] = 16
"""Gauss-Legendre nodes per cell of the oscillatory integrator."""

BAND_CELLS: Final[int] = 32
"""Geometric cells placed across the cut-off transition of a t-integral."""

OSCILLATORY_DECAY_TOL: Final[float] = 1e-8
"""Largest end-point weight t*|f(t)| relative to the envelope integral."""

CAP_EXTENSION_FACTOR: Final[float] = 4.0
"""Factor by which a t-integration cap grows while the integrand has not decayed at it."""

SYMBOLIC_REL_TOL: Final[float] = 1e-10
"""Relative tolerance of symbolic-against-numeric cross-checks."""

QUADRATURE_REL_TOL: Final[float] = 1e-7
"""Relative tolerance of quadrature cross-checks."""

SCALING_REL_TOL: Final[float] = 1e-10
"""Relative tolerance of the omega power-scaling identity."""

INVERSION_REL_TOL: Final[float] = 1e-9
"""Relative tolerance of the inversion formula round trip."""

DEFAULT_SEED: Final[int] = 0
"""Seed of every sampled check unless the caller supplies one."""

QUADRATURE_NODE_BUDGET: Final[int] = 20_000_000
"""Largest number of quadrature nodes a single oscillatory integral may use."""

MAX_EXTRAPOLATED_TRUNCATION: Final[int] = 1 << 22
"""Largest truncation rebuilt when estimating the K needed for an argument."""

SANDWICH_MAX_ORDER: Final[int] = 40
"""Largest moment order used by the moment sandwich fits."""

NONELLIPTIC_STARTS: Final[int] = 16
"""Random starting points of the non-elliptic point search."""

BUMP_SAMPLE_RADII: Final[int] = 64
"""Radii sampled across the transition band when fitting the cut-off bound."""

ENVELOPE_Y_POINTS: Final[int] = 9
"""Points per side of the rescaled patch sampled by the envelope checks."""

ENVELOPE_T_MAX: Final[float] = 1e4
"""Default upper end of the t-grid of the envelope checks."""

DIVERGENCE_CONSTANTS: Final[int] = 10
"""The divergence witness tests the constants c = 0, 1, ..., 10."""

MAX_ITERATE_ORDER: Final[int] = 12
"""Largest k of a symbolic iterate expansion."""

__all__ = (
    'BAND_CELLS',
    'BUMP_DRIFT_TOL',
    'BUMP_MAX_ORDER',
    'BUMP_SAMPLE_RADII',
    'CAP_EXTENSION_FACTOR',
    'CAP_REL_TOL',
    'CELL_T_POINTS',
    'DEFAULT_SEED',
    'DEFAULT_TRUNCATION',
    'DIVERGENCE_CONSTANTS',
    'ENVELOPE_T_MAX',
    'ENVELOPE_Y_POINTS',
    'FIT_GRID_POINTS',
    'GAMMA_MAX',
    'GAMMA_MIN_TRUNCATION',
    'GAMMA_SLACK',
    'GAMMA_TOL',
    'GAUSS_LEGENDRE_NODES',
    'GROWTH_DRIFT_TOL',
    'INVERSION_REL_TOL',
    'LOG_CONVEXITY_TOL',
    'MAX_EXTRAPOLATED_TRUNCATION',
    'MAX_ITERATE_ORDER',
    'MAX_JET_ORDER',
    'MIN_TRUNCATION',
    'MOMENT_TAIL_MARGIN',
    'MOMENT_TAIL_REL_TOL',
    'NONELLIPTIC_RESIDUAL_TOL',
    'NONELLIPTIC_STARTS',
    'NONELLIPTIC_SYMBOL_TOL',
    'OSCILLATORY_DECAY_TOL',
    'PATCH_POINTS',
    'QUADRATURE_NODE_BUDGET',
    'QUADRATURE_REL_TOL',
    'SANDWICH_MAX_ORDER',
    'SCALING_REL_TOL',
    'SEGMENT_POINTS',
    'SYMBOLIC_REL_TOL',
    'TAIL_SUBWINDOWS',
    'TAIL_WINDOW_FRACTION',
    'TERM_BUDGET',
    'TREND_SLOPE_TOL',
)