"""Mission script, per-tick trace and result definitions."""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Tuple, Union

from ...command.airflow import PwmBands
from ...control.ffp_controller import ControllerKind, ControllerMode, ControllerParams
from ...grasp.feasibility import GraspParams
from ...grasp.schema.object_types import BaseConfig, GripperGeometry, ObjectSpec
from ...plant.pneumatic_plant import PlantParams
from ...plant.sensor import SensorModel


class ScriptValidationError(ValueError):
    """Raised for malformed mission scripts."""


@dataclass(frozen=True)
class SetPwm:
    width_us: int


@dataclass(frozen=True)
class PlaceObject:
    obj: ObjectSpec
    offset_mm: float = 0.0


@dataclass(frozen=True)
class Descend:
    pass


@dataclass(frozen=True)
class Ascend:
    pass


@dataclass(frozen=True)
class AssertHold:
    duration_s: float


@dataclass(frozen=True)
class Land:
    incline_deg: float = 0.0


Action = Union[SetPwm, PlaceObject, Descend, Ascend, AssertHold, Land]


@dataclass(frozen=True)
class MissionStep:
    at: float
    action: Action


@dataclass(frozen=True)
class MissionScript:
    """Timed step sequence for one simulated mission."""

    steps: Tuple[MissionStep, ...]
    duration: float
    controller: ControllerKind = ControllerKind.FFP
    seed: int = 0
    aerial: bool = False
    name: str = "mission"

    def validate(self) -> None:
        """
        Check step ordering and timing.

        Raises:
            ScriptValidationError: On negative or non-increasing step times,
                steps beyond the duration, or hold windows overrunning it
        """
        if self.duration < 0:
            raise ScriptValidationError(f"duration must be non-negative, got {self.duration}")
        if not 0 <= self.seed < 2**64:
            raise ScriptValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        previous = None
        for step in self.steps:
            if step.at < 0:
                raise ScriptValidationError(f"Step time must be non-negative, got {step.at}")
            if previous is not None and step.at <= previous:
                raise ScriptValidationError(
                    f"Step times must be strictly increasing: {step.at} after {previous}"
                )
            previous = step.at
            action = step.action
            if isinstance(action, AssertHold):
                if action.duration_s <= 0:
                    raise ScriptValidationError("AssertHold duration must be positive")
                if step.at + action.duration_s > self.duration + 1e-9:
                    raise ScriptValidationError(
                        f"Hold window ending at {step.at + action.duration_s} s "
                        f"overruns mission duration {self.duration} s"
                    )
            elif isinstance(action, SetPwm) and not isinstance(action.width_us, int):
                raise ScriptValidationError(f"PWM width must be an integer, got {action.width_us}")
        if previous is not None and self.duration < previous:
            raise ScriptValidationError(
                f"duration {self.duration} s is shorter than the last step at {previous} s"
            )


@dataclass(frozen=True)
class TraceRecord:
    """Telemetry row emitted every tick."""

    t: float
    pwm: int
    command: ControllerMode
    valve_inflate: bool
    valve_deflate: bool
    pump_on: bool
    duty: float
    y: float
    aperture: float
    event: Optional[str] = None


@dataclass(frozen=True)
class MissionMetrics:
    rise_time_s: Optional[float] = None
    settle_time_s: Optional[float] = None
    steady_state_error_kPa: float = 0.0
    hold_satisfied: bool = False


@dataclass(frozen=True)
class MissionResult:
    """Mission outcome: success, or failure with a reason."""

    success: bool
    reason: Optional[str] = None
    metrics: MissionMetrics = field(default_factory=MissionMetrics)

    @property
    def outcome(self) -> str:
        return "Success" if self.success else f"Failure({self.reason})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": self.outcome,
            "rise_time_s": self.metrics.rise_time_s,
            "settle_time_s": self.metrics.settle_time_s,
            "steady_state_error_kPa": self.metrics.steady_state_error_kPa,
            "hold_satisfied": self.metrics.hold_satisfied,
        }


@dataclass(frozen=True)
class SegmentMetrics:
    """Step-response figures for one constant-setpoint segment."""

    start: float
    end: float
    setpoint: float
    command: ControllerMode
    rise_time_s: Optional[float]
    settle_time_s: Optional[float]
    steady_state_error_kPa: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "start_s": self.start,
            "end_s": self.end,
            "setpoint_kpa": self.setpoint,
            "command": self.command.value,
            "rise_time_s": self.rise_time_s,
            "settle_time_s": self.settle_time_s,
            "steady_state_error_kpa": self.steady_state_error_kPa,
        }


@dataclass(frozen=True)
class MissionParams:
    """Harness settings not owned by a physical module."""

    settle_window_s: float = 1.0
    steady_state_fraction: float = 0.2
    offset_range_mm: float = 15.0
    hold_s: float = 30.0

    def __post_init__(self):
        if self.settle_window_s <= 0:
            raise ValueError("settle_window_s must be positive")
        if not 0 < self.steady_state_fraction <= 1:
            raise ValueError("steady_state_fraction must be in (0, 1]")
        if self.offset_range_mm < 0:
            raise ValueError("offset_range_mm must be non-negative")
        if self.hold_s <= 0:
            raise ValueError("hold_s must be positive")


@dataclass(frozen=True)
class SimulationConfig:
    """All module parameters a simulation needs."""

    controller: ControllerParams = field(default_factory=ControllerParams)
    bands: PwmBands = field(default_factory=PwmBands)
    plant: PlantParams = field(default_factory=PlantParams)
    sensor: SensorModel = field(default_factory=SensorModel)
    x_base: GripperGeometry = field(default_factory=GripperGeometry.x_base)
    h_base: GripperGeometry = field(default_factory=GripperGeometry.h_base)
    base: BaseConfig = BaseConfig.H_BASE
    grasp: GraspParams = field(default_factory=GraspParams)
    mission: MissionParams = field(default_factory=MissionParams)

    @property
    def geometry(self) -> GripperGeometry:
        return self.h_base if self.base is BaseConfig.H_BASE else self.x_base

    def with_base(self, base: BaseConfig) -> "SimulationConfig":
        return replace(self, base=base)
