"""Decode flight-controller PWM pulses and route the gripper airflow."""

import logging
from dataclasses import dataclass
from typing import Optional

from transitions import Machine

from ..control.ffp_controller import ControllerMode


class InvalidSignalError(ValueError):
    """Raised when a PWM pulse lies outside the accepted envelope."""


@dataclass(frozen=True)
class PwmBands:
    """Pulse-width envelope and command band boundaries in microseconds."""

    envelope_low: int = 800
    envelope_high: int = 2200
    deflate_below: int = 1300
    inflate_above: int = 1700

    def __post_init__(self):
        if not (
            self.envelope_low < self.deflate_below <= self.inflate_above < self.envelope_high
        ):
            raise ValueError(
                "PWM bands must satisfy envelope_low < deflate_below <= inflate_above < envelope_high"
            )


@dataclass(frozen=True)
class PwmPulse:
    """A single pulse from the flight controller."""

    width: int

    def in_envelope(self, bands: PwmBands = PwmBands()) -> bool:
        return bands.envelope_low <= self.width <= bands.envelope_high


@dataclass(frozen=True)
class AirflowState:
    """Valve pair, pump gate and the decoded command."""

    valve_inflate: bool = False
    valve_deflate: bool = False
    pump_on: bool = False
    command: ControllerMode = ControllerMode.REST

    def __post_init__(self):
        if self.valve_inflate and self.valve_deflate:
            raise ValueError("Inflation and deflation valves cannot both be open")
        if self.pump_on and not (self.valve_inflate or self.valve_deflate):
            raise ValueError("Pump cannot run with both valves closed")
        if self.command is ControllerMode.REST and (
            self.valve_inflate or self.valve_deflate or self.pump_on
        ):
            raise ValueError("Rest requires both valves closed and the pump off")


def decode_pwm(pulse: PwmPulse, bands: PwmBands = PwmBands()) -> ControllerMode:
    """
    Map a pulse width onto one of the three gripper commands.

    Args:
        pulse: Pulse from the flight controller
        bands: Envelope and band boundaries

    Returns:
        Deflation below the deflate band edge, Inflation above the inflate
        band edge, Rest in between (edges inclusive)

    Raises:
        InvalidSignalError: If the width is outside the envelope
    """
    if not pulse.in_envelope(bands):
        raise InvalidSignalError(
            f"PWM width {pulse.width} us outside [{bands.envelope_low}, {bands.envelope_high}]"
        )
    if pulse.width < bands.deflate_below:
        return ControllerMode.DEFLATION
    if pulse.width > bands.inflate_above:
        return ControllerMode.INFLATION
    return ControllerMode.REST


def decode_pwm_failsafe(width: Optional[int], bands: PwmBands = PwmBands()) -> ControllerMode:
    """Decode a possibly missing pulse; anything invalid maps to Rest."""
    if width is None:
        logging.getLogger(__name__).warning("No PWM pulse, holding gripper at rest")
        return ControllerMode.REST
    try:
        return decode_pwm(PwmPulse(width), bands)
    except InvalidSignalError as e:
        logging.getLogger(__name__).warning(f"{e}; holding gripper at rest")
        return ControllerMode.REST


def encode_mode(mode: ControllerMode, bands: PwmBands = PwmBands()) -> int:
    """Canonical pulse width (band centre) for a command."""
    if mode is ControllerMode.DEFLATION:
        return (bands.envelope_low + bands.deflate_below) // 2
    if mode is ControllerMode.INFLATION:
        return (bands.inflate_above + bands.envelope_high) // 2
    return (bands.deflate_below + bands.inflate_above) // 2


def transition(
    current: AirflowState, command: ControllerMode, duty: float, holding: bool = False
) -> AirflowState:
    """
    Next airflow state for a command and pump duty.

    Only the valve matching the command opens; the pump runs while the duty
    is positive. A holding supervisor closes both valves and stops the pump
    while keeping the command. The result depends on (command, duty,
    holding) only; ``current`` does not influence it.
    """
    if not 0.0 <= duty <= 100.0:
        raise ValueError(f"duty must be in [0, 100], got {duty}")
    if command is ControllerMode.REST or holding:
        return AirflowState(command=command)
    inflating = command is ControllerMode.INFLATION
    return AirflowState(
        valve_inflate=inflating,
        valve_deflate=not inflating,
        pump_on=duty > 0.0,
        command=command,
    )


class AirflowMachine:
    """
    Stateful airflow router for a simulation loop.

    Tracks the active command as a ``transitions`` state machine and derives
    each tick's valve/pump state from the pure ``transition`` function.
    """

    STATES = [mode.value for mode in ControllerMode]

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.airflow = AirflowState()
        self.machine = Machine(
            model=self,
            states=self.STATES,
            initial=ControllerMode.REST.value,
            auto_transitions=True,
        )

    def on_enter_inflation(self):
        self.logger.debug("Inflation valve open, deflation valve closed")

    def on_enter_deflation(self):
        self.logger.debug("Deflation valve open, inflation valve closed")

    def on_enter_rest(self):
        self.logger.debug("Both valves closed, pump stopped")

    @property
    def command(self) -> ControllerMode:
        return ControllerMode(self.state)

    def apply(self, command: ControllerMode, duty: float, holding: bool = False) -> AirflowState:
        """Route the airflow for this tick and return the resulting state."""
        if command.value != self.state:
            getattr(self, f"to_{command.value}")()
        self.airflow = transition(self.airflow, command, duty, holding)
        return self.airflow
