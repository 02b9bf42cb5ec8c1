"""Hardy-type logical contradictions for sequences of spin measurements.

The package computes joint outcome probabilities for successive spin
projections along coplanar directions, builds the associated system of
zero constraints, maximizes the surviving success probability over the
measurement angles, and certifies by exhaustive enumeration that no
model assigning predetermined outcomes per direction reproduces the
result.
"""

from .hardy import (
    ConstraintKind,
    HardyInstance,
    HardyReport,
    InstanceFormatError,
    ZeroConstraint,
    analytic_configuration,
    analytic_family,
    angle_condition_check,
    build_constraints,
    constraint_plan,
    evaluate,
    load_instance,
    save_instance,
    save_report_csv,
    success_plan,
)
from .lhv import (
    DirectionSet,
    LhvStrategy,
    WitnessReport,
    WitnessRow,
    enumerate_strategies,
    lhv_max_success,
    save_witness_csv,
    witness_partition,
)
from .optimize import (
    SearchConfig,
    SearchResult,
    maximize_success,
    penalty_search,
    save_history_csv,
    save_result_text,
    save_scan_csv,
    scan_free_angle,
)
from .sequence import (
    CapExceededError,
    JointDistribution,
    MeasurementPlan,
    OutcomeString,
    joint_distribution,
    joint_probability,
    load_distribution_csv,
    load_distribution_text,
    save_distribution_csv,
    save_distribution_text,
    spin_operators,
    two_step_trace_probability,
)
from .wigner import (
    Angle,
    OutcomeLabel,
    SpinLabel,
    WignerMatrix,
    angle_gap,
    wigner_d,
    wigner_d_element,
)

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "CapExceededError",
    "ConstraintKind",
    "DirectionSet",
    "HardyInstance",
    "HardyReport",
    "InstanceFormatError",
    "JointDistribution",
    "LhvStrategy",
    "MeasurementPlan",
    "OutcomeLabel",
    "OutcomeString",
    "SearchConfig",
    "SearchResult",
    "SpinLabel",
    "WignerMatrix",
    "WitnessReport",
    "WitnessRow",
    "ZeroConstraint",
    "analytic_configuration",
    "analytic_family",
    "angle_condition_check",
    "angle_gap",
    "build_constraints",
    "constraint_plan",
    "enumerate_strategies",
    "evaluate",
    "joint_distribution",
    "joint_probability",
    "lhv_max_success",
    "load_distribution_csv",
    "load_distribution_text",
    "load_instance",
    "maximize_success",
    "penalty_search",
    "save_distribution_csv",
    "save_distribution_text",
    "save_history_csv",
    "save_instance",
    "save_report_csv",
    "save_result_text",
    "save_scan_csv",
    "save_witness_csv",
    "scan_free_angle",
    "spin_operators",
    "success_plan",
    "two_step_trace_probability",
    "wigner_d",
    "wigner_d_element",
    "witness_partition",
]
