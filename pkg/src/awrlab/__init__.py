"""Exact Riemann solvers, vanishing-pressure sweeps and a finite-volume
simulator for traffic-flow systems with modified Chaplygin gas pressure."""

from .core import (
    ORIGINAL,
    PERTURBED,
    TRANSPORT,
    BranchError,
    Conserved,
    DegenerateDensityError,
    InapplicableError,
    NoThresholdError,
    PressureParams,
    State,
    WaveSpeedPair,
    eigenvalues_original,
    eigenvalues_perturbed,
    from_conserved,
    genuine_nonlinearity_original,
    pressure,
    to_conserved,
)
from .fv import FieldSnapshot, GridConfig, delta_weight_estimate, l1_error_vs_exact, simulate
from .original import RegionLabel14, RiemannSolution14, classify, solve, threshold_A0
from .perturbed import (
    BumpTestFunction,
    RegionLabel17,
    RiemannSolution17,
    classify_perturbed,
    solve_perturbed,
    weak_form_residual,
)
from .transport import (
    DeltaShock,
    EntropyClass,
    SweepRecord,
    SweepReport,
    TransportSolution,
    Verdict,
    default_schedule,
    entropy_check,
    grh_residual,
    limit_delta_consistency,
    special_delta,
    sweep_original,
    sweep_perturbed,
    transport_solve,
)

__version__ = "0.1.0"
