"""First-order pneumatic plant: micro-pump, two valves and a leaking chamber."""

import math
from dataclasses import dataclass

from ..command.airflow import AirflowState


class InvalidGeometryError(ValueError):
    """Raised when a calibration target is not reachable from the source pressure."""


def calibrate_k_pump(t_rise: float, y0: float, y1: float, p_src: float) -> float:
    """
    Pump rate coefficient that takes the chamber from y0 to y1 in t_rise.

    Solves y(t) = p_src + (y0 - p_src) * exp(-k * t) for k at full duty
    without leakage.

    Args:
        t_rise: Rise time in seconds
        y0: Starting pressure in kPa
        y1: Target pressure in kPa
        p_src: Pump pressure limit in kPa

    Returns:
        k_pump in 1/s

    Raises:
        InvalidGeometryError: If y1 is not between y0 and p_src
    """
    if t_rise <= 0:
        raise InvalidGeometryError(f"t_rise must be positive, got {t_rise}")
    if y0 == p_src:
        raise InvalidGeometryError("Starting pressure equals the pump source pressure")
    reachable = y0 <= y1 < p_src if y0 < p_src else p_src < y1 <= y0
    if not reachable:
        raise InvalidGeometryError(
            f"Target {y1} kPa is not between start {y0} kPa and source {p_src} kPa"
        )
    return math.log((p_src - y0) / (p_src - y1)) / t_rise


def analytic_rise(y0: float, p_src: float, k_pump: float, t: float) -> float:
    """Closed-form chamber pressure at full duty and zero leakage."""
    return p_src + (y0 - p_src) * math.exp(-k_pump * t)


@dataclass(frozen=True)
class PlantParams:
    """Pump limits, rate coefficients and integration step."""

    p_pump_in: float = 120.0
    p_pump_out: float = -60.0
    k_pump: float = 0.284
    k_leak: float = 0.01
    dt: float = 0.01

    def __post_init__(self):
        if not self.p_pump_out < 0 < self.p_pump_in:
            raise ValueError(
                f"Pump limits must satisfy p_pump_out < 0 < p_pump_in, got "
                f"[{self.p_pump_out}, {self.p_pump_in}]"
            )
        if self.k_pump <= 0:
            raise ValueError(f"k_pump must be positive, got {self.k_pump}")
        if self.k_leak < 0:
            raise ValueError(f"k_leak must be non-negative, got {self.k_leak}")
        if not 0 < self.dt <= 0.1:
            raise ValueError(f"dt must be in (0, 0.1], got {self.dt}")

    @classmethod
    def from_rise_anchor(
        cls,
        t_rise: float = 5.0,
        y_from: float = -25.0,
        y_to: float = 85.0,
        **kwargs,
    ) -> "PlantParams":
        """Build params whose k_pump reproduces a measured inflation rise."""
        p_pump_in = kwargs.pop("p_pump_in", 120.0)
        k_pump = calibrate_k_pump(t_rise, y_from, y_to, p_pump_in)
        return cls(p_pump_in=p_pump_in, k_pump=k_pump, **kwargs)


@dataclass(frozen=True)
class PlantState:
    """Chamber gauge pressure in kPa."""

    y: float = 0.0


def plant_step(
    state: PlantState, airflow: AirflowState, duty: float, params: PlantParams
) -> PlantState:
    """
    Advance the chamber pressure by one explicit-Euler step.

    The open valve connects the pump at the given duty towards its pressure
    limit; leakage pulls towards ambient at all times. The result is
    clamped to the pump limits.
    """
    y = state.y
    dydt = -params.k_leak * y
    if airflow.valve_inflate:
        dydt += params.k_pump * (duty / 100.0) * (params.p_pump_in - y)
    elif airflow.valve_deflate:
        dydt += params.k_pump * (duty / 100.0) * (params.p_pump_out - y)
    y_next = y + params.dt * dydt
    return PlantState(y=min(max(y_next, params.p_pump_out), params.p_pump_in))
