"""Mission harness: closed-loop simulation, experiments and Monte Carlo batches."""

from .metrics import segment_metrics
from .monte_carlo import (
    BatchSpec,
    BatchSummary,
    derive_seed,
    grasp_batch,
    landing_batch,
    monte_carlo,
    run_grasp_matrix,
    summarize,
)
from .result_organizer import ResultOrganizer
from .schema.mission_types import (
    Ascend,
    AssertHold,
    Descend,
    Land,
    MissionMetrics,
    MissionParams,
    MissionResult,
    MissionScript,
    MissionStep,
    PlaceObject,
    ScriptValidationError,
    SegmentMetrics,
    SetPwm,
    SimulationConfig,
    TraceRecord,
)
from .script_io import load_mission_script, load_mission_script_file
from .simulator import ClosedLoop, run_mission, step_response_experiment
from .trace_io import read_trace_csv, trace_to_frame, write_trace_csv

__all__ = [
    "Ascend",
    "AssertHold",
    "BatchSpec",
    "BatchSummary",
    "ClosedLoop",
    "Descend",
    "Land",
    "MissionMetrics",
    "MissionParams",
    "MissionResult",
    "MissionScript",
    "MissionStep",
    "PlaceObject",
    "ResultOrganizer",
    "ScriptValidationError",
    "SegmentMetrics",
    "SetPwm",
    "SimulationConfig",
    "TraceRecord",
    "derive_seed",
    "grasp_batch",
    "landing_batch",
    "load_mission_script",
    "load_mission_script_file",
    "monte_carlo",
    "read_trace_csv",
    "run_grasp_matrix",
    "run_mission",
    "segment_metrics",
    "step_response_experiment",
    "summarize",
    "trace_to_frame",
    "write_trace_csv",
]
