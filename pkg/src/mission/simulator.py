"""Fixed-timestep closed-loop simulation of the gripper and its missions."""

import logging
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..command.airflow import AirflowMachine, decode_pwm_failsafe, encode_mode
from ..control.ffp_controller import (
    ControllerKind,
    ControllerMode,
    ControllerOutput,
    ControllerParams,
    control_output,
)
from ..grasp.feasibility import (
    aperture,
    grasp_feasible,
    graspable_span,
    landing_outcome,
    payload_check,
)
from ..grasp.schema.object_types import GraspOutcome, GraspResult, ObjectSpec
from ..plant.pneumatic_plant import PlantState, plant_step
from ..plant.sensor import read_sensor
from .metrics import segment_metrics, split_segments
from .schema.mission_types import (
    Ascend,
    AssertHold,
    Descend,
    Land,
    MissionMetrics,
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

# Tolerance for matching scheduled times against tick times.
TIME_EPS = 1e-9


def mode_for_setpoint(r: float) -> ControllerMode:
    if r > 0:
        return ControllerMode.INFLATION
    if r < 0:
        return ControllerMode.DEFLATION
    return ControllerMode.REST


def params_for_setpoint(params: ControllerParams, r: float) -> ControllerParams:
    """Controller params whose active setpoint is r."""
    if r > 0:
        return replace(params, r_inflate=r)
    if r < 0:
        return replace(params, r_deflate=r)
    return params


def tick_count(duration: float, dt: float) -> int:
    return int(round(duration / dt))


class ClosedLoop:
    """
    One gripper in closed loop: sensor, control law, airflow, plant.

    The hysteresis latch of the hold supervisor lives here and is cleared
    whenever the command changes.
    """

    def __init__(self, config: SimulationConfig, kind: ControllerKind, rng: np.random.Generator):
        self.config = config
        self.kind = kind
        self.rng = rng
        self.state = PlantState()
        self.machine = AirflowMachine()
        self.mode = ControllerMode.REST
        self.latched = False

    @property
    def y(self) -> float:
        return self.state.y

    def tick(
        self,
        t: float,
        pwm: int,
        mode: ControllerMode,
        params: ControllerParams,
        event: Optional[str] = None,
    ) -> Tuple[TraceRecord, ControllerOutput]:
        """Run one control period and return its telemetry row."""
        if mode is not self.mode:
            self.mode = mode
            self.latched = False

        measured = read_sensor(self.state, self.config.sensor, self.rng)
        output = control_output(self.kind, params, mode, measured, self.latched)
        self.latched = output.holding and mode is not ControllerMode.REST
        airflow = self.machine.apply(mode, output.duty, holding=output.holding)

        record = TraceRecord(
            t=t,
            pwm=pwm,
            command=mode,
            valve_inflate=airflow.valve_inflate,
            valve_deflate=airflow.valve_deflate,
            pump_on=airflow.pump_on,
            duty=output.duty,
            y=self.state.y,
            aperture=aperture(self.state.y, self.config.geometry),
            event=event,
        )
        self.state = plant_step(self.state, airflow, output.duty, self.config.plant)
        return record, output


class MissionRunner:
    """
    Executes a mission script against the closed loop.

    Steps fire on the first tick at or after their scheduled time. The
    first failing check decides the outcome; the loop keeps running to the
    end of the script so every tick is recorded.
    """

    def __init__(self, script: MissionScript, config: Optional[SimulationConfig] = None):
        self.logger = logging.getLogger(__name__)
        script.validate()
        self.script = script
        self.config = config or SimulationConfig()
        self.geometry = self.config.geometry
        self.rng = np.random.default_rng(script.seed)
        self.loop = ClosedLoop(self.config, script.controller, self.rng)

        self.pwm = encode_mode(ControllerMode.REST, self.config.bands)
        self.mode = ControllerMode.REST
        self.segment_starts: List[int] = [0]
        self.segment_modes: List[ControllerMode] = [ControllerMode.REST]

        self.obj: Optional[ObjectSpec] = None
        self.offset = 0.0
        self.outcome: Optional[GraspOutcome] = None
        self.descended = False
        self.gripped = False
        self.dropped = False
        self.hold_until: Optional[float] = None
        self.hold_satisfied = False
        self.failure: Optional[str] = None

    def run(self) -> Tuple[List[TraceRecord], MissionResult]:
        """Simulate the whole script."""
        dt = self.config.plant.dt
        n_ticks = tick_count(self.script.duration, dt)
        pending = list(self.script.steps)
        trace: List[TraceRecord] = []
        holding: List[bool] = []

        self.logger.debug(
            f"Running mission '{self.script.name}' ({self.script.controller.value}, "
            f"{self.config.base.value}-base, {n_ticks + 1} ticks)"
        )

        for n in range(n_ticks + 1):
            t = n * dt
            events: List[str] = []
            while pending and pending[0].at <= t + TIME_EPS:
                self._dispatch(pending.pop(0), t, n, events)
            self._evaluate(t, events)

            record, output = self.loop.tick(
                t, self.pwm, self.mode, self.config.controller, ";".join(events) or None
            )
            trace.append(record)
            holding.append(output.holding)

        result = MissionResult(
            success=self.failure is None,
            reason=self.failure,
            metrics=self._metrics(trace, holding),
        )
        self.logger.debug(f"Mission '{self.script.name}' finished: {result.outcome}")
        return trace, result

    def _fail(self, reason: str, t: float, events: List[str]) -> None:
        if self.failure is None:
            self.failure = reason
            events.append(f"fail:{reason}")
            self.logger.debug(f"Mission failure at t={t:.2f} s: {reason}")

    def _gripper_open(self) -> bool:
        return aperture(self.loop.y, self.geometry) >= self.geometry.aperture_open

    def _dispatch(self, step: MissionStep, t: float, index: int, events: List[str]) -> None:
        action = step.action
        self.logger.debug(f"t={t:.2f} s: {action}")

        if isinstance(action, SetPwm):
            self.pwm = action.width_us
            mode = decode_pwm_failsafe(action.width_us, self.config.bands)
            events.append(f"pwm={action.width_us}")
            if mode is not self.mode:
                self.mode = mode
                self.segment_starts.append(index)
                self.segment_modes.append(mode)
            return

        if self.failure is not None:
            return

        if isinstance(action, PlaceObject):
            self.obj = action.obj
            self.offset = action.offset_mm
            self.outcome = None
            self.descended = self.gripped = self.dropped = False
            events.append(f"place:{action.obj.name or 'object'}")

        elif isinstance(action, Descend):
            events.append("descend")
            if self.obj is None:
                return
            if not self._gripper_open():
                self._fail("GripperNotOpen", t, events)
                return
            self.outcome = grasp_feasible(
                self.obj, self.geometry, self.offset, self.script.aerial, self.config.grasp
            )
            self.descended = True
            if self.outcome.result is not GraspResult.SUCCESS:
                self._fail(self.outcome.result.value, t, events)

        elif isinstance(action, Ascend):
            events.append("ascend")
            if self.obj is None or not self.descended:
                return
            self._check_held(t, events)
            if self.failure is None and not payload_check(
                self.obj, self.config.grasp.sav_mass, self.config.grasp
            ):
                self._fail("PayloadExceeded", t, events)

        elif isinstance(action, AssertHold):
            events.append("hold:start")
            if self.obj is None:
                self._fail("NoObject", t, events)
                return
            self._check_held(t, events)
            self.hold_until = t + action.duration_s

        elif isinstance(action, Land):
            events.append(f"land:{action.incline_deg:g}")
            if not self._gripper_open():
                self._fail("GripperNotOpen", t, events)
            elif not landing_outcome(
                self.geometry, action.incline_deg, self.rng, self.config.grasp
            ):
                self._fail("LandingFailed", t, events)
            else:
                events.append("land:ok")

        else:
            raise ScriptValidationError(f"Unknown mission action: {action!r}")

    def _check_held(self, t: float, events: List[str]) -> None:
        if self.outcome is not None and self.outcome.result is not GraspResult.SUCCESS:
            self._fail(self.outcome.result.value, t, events)
        elif self.dropped:
            self._fail("Dropped", t, events)
        elif not self.gripped:
            self._fail("NotGripped", t, events)

    def _contact_aperture(self) -> float:
        # Fingers touch the object, or close as far as pressure regulation allows.
        params = self.config.controller
        regulated = aperture(params.r_inflate - params.hold_band, self.geometry)
        return max(graspable_span(self.obj), regulated)

    def _evaluate(self, t: float, events: List[str]) -> None:
        if self.failure is not None:
            return

        y = self.loop.y
        awaiting_contact = (
            self.descended
            and self.outcome is not None
            and self.outcome.result is GraspResult.SUCCESS
            and not (self.gripped or self.dropped)
        )
        if awaiting_contact and aperture(y, self.geometry) <= self._contact_aperture():
            if self.rng.random() < self.outcome.success_probability:
                self.gripped = True
                events.append("contact")
            else:
                self.dropped = True
                events.append("contact:slip")

        if self.hold_until is not None:
            if y < self.geometry.close_onset:
                self._fail("HoldLost", t, events)
                self.hold_until = None
            elif t >= self.hold_until - TIME_EPS:
                self.hold_satisfied = True
                self.hold_until = None
                events.append("hold:ok")

    def _metrics(self, trace: List[TraceRecord], holding: List[bool]) -> MissionMetrics:
        segments = split_segments(self.segment_starts, len(trace))
        # Report the last actuated segment, or the trailing rest segment.
        chosen = len(segments) - 1
        for i in range(len(segments) - 1, -1, -1):
            if self.segment_modes[i] is not ControllerMode.REST and len(segments[i]) > 0:
                chosen = i
                break
        mode = self.segment_modes[chosen]
        setpoint = 0.0
        if mode is ControllerMode.INFLATION:
            setpoint = self.config.controller.r_inflate
        elif mode is ControllerMode.DEFLATION:
            setpoint = self.config.controller.r_deflate
        segment = segments[chosen]
        figures = segment_metrics(
            trace,
            holding,
            segment.start,
            segment.stop,
            setpoint,
            mode,
            self.config.plant.dt,
            self.config.mission,
        )
        return MissionMetrics(
            rise_time_s=figures.rise_time_s,
            settle_time_s=figures.settle_time_s,
            steady_state_error_kPa=figures.steady_state_error_kPa,
            hold_satisfied=self.hold_satisfied,
        )


def run_mission(
    script: MissionScript, config: Optional[SimulationConfig] = None
) -> Tuple[List[TraceRecord], MissionResult]:
    """
    Simulate a mission script.

    Args:
        script: Timed mission steps, controller choice and seed
        config: Module parameters (defaults when omitted)

    Returns:
        Tuple of the per-tick trace and the mission result

    Raises:
        ScriptValidationError: If the script is malformed
    """
    return MissionRunner(script, config).run()


def step_response_experiment(
    controller: ControllerKind,
    setpoint_sequence: Sequence[Tuple[float, float]],
    config: Optional[SimulationConfig] = None,
    duration: Optional[float] = None,
    seed: int = 0,
) -> Tuple[List[TraceRecord], List[SegmentMetrics]]:
    """
    Drive the loop through a sequence of pressure setpoints.

    A positive setpoint inflates, a negative one deflates and zero rests;
    before the first entry the gripper rests.

    Args:
        controller: Control law to evaluate
        setpoint_sequence: (time s, setpoint kPa) pairs, strictly increasing in time
        config: Module parameters (defaults when omitted)
        duration: Experiment length; defaults to 20 s past the last setpoint
        seed: Seed of the sensor noise stream

    Returns:
        Tuple of the trace and one SegmentMetrics per setpoint entry
    """
    if not setpoint_sequence:
        raise ValueError("setpoint_sequence must not be empty")
    times = [t for t, _ in setpoint_sequence]
    if times[0] < 0 or any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("Setpoint times must be non-negative and strictly increasing")

    config = config or SimulationConfig()
    duration = times[-1] + 20.0 if duration is None else duration
    if duration < times[-1]:
        raise ValueError("duration is shorter than the last setpoint time")

    dt = config.plant.dt
    loop = ClosedLoop(config, controller, np.random.default_rng(seed))
    pending = list(setpoint_sequence)
    params = config.controller
    mode = ControllerMode.REST
    starts: List[Tuple[int, float]] = []
    trace: List[TraceRecord] = []
    holding: List[bool] = []

    for n in range(tick_count(duration, dt) + 1):
        t = n * dt
        event = None
        while pending and pending[0][0] <= t + TIME_EPS:
            _, r = pending.pop(0)
            mode = mode_for_setpoint(r)
            params = params_for_setpoint(config.controller, r)
            starts.append((n, r))
            event = f"setpoint={r:g}"
        record, output = loop.tick(t, encode_mode(mode, config.bands), mode, params, event)
        trace.append(record)
        holding.append(output.holding)

    metrics = []
    segments = split_segments([index for index, _ in starts], len(trace))
    for (index, r), segment in zip(starts, segments):
        if len(segment) == 0:
            continue
        metrics.append(
            segment_metrics(
                trace,
                holding,
                segment.start,
                segment.stop,
                r,
                mode_for_setpoint(r),
                dt,
                config.mission,
            )
        )
    return trace, metrics
