"""Common due-date earliness/tardiness scheduling on single and parallel machines."""

__version__ = "0.1.0"

from .core import (
    InfeasibleError,
    Instance,
    Job,
    PenaltyBreakdown,
    Schedule,
    ShiftState,
    StructuralError,
    compute_shift_state,
    evaluate_penalty,
    penalty_via_signs,
)
from .dynamic import DynamicResult, extend_and_reoptimize
from .metaheuristic import AnnealConfig, AnnealResult, anneal
from .parallel import assign_jobs, optimize_parallel, select_machine
from .single_machine import (
    OptimizeResult,
    apply_left_shift,
    initialize_compact,
    optimize_sequence,
    optimize_sequence_linear,
    optimize_sequence_logsearch,
)

__all__ = [
    "AnnealConfig", "AnnealResult", "DynamicResult", "InfeasibleError", "Instance", "Job",
    "OptimizeResult", "PenaltyBreakdown", "Schedule", "ShiftState", "StructuralError",
    "anneal", "apply_left_shift", "assign_jobs", "compute_shift_state", "evaluate_penalty",
    "extend_and_reoptimize", "initialize_compact", "optimize_parallel", "optimize_sequence",
    "optimize_sequence_linear", "optimize_sequence_logsearch", "penalty_via_signs", "select_machine",
]
