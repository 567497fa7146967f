"""Pressure sensor feeding the controller."""

from dataclasses import dataclass

import numpy as np

from .pneumatic_plant import PlantState


@dataclass(frozen=True)
class SensorModel:
    """Gauge sensor range in kPa and optional gaussian noise."""

    range_low: float = -100.0
    range_high: float = 300.0
    noise_sd: float = 0.0

    def __post_init__(self):
        if self.range_low >= self.range_high:
            raise ValueError("Sensor range_low must be below range_high")
        if self.noise_sd < 0:
            raise ValueError(f"noise_sd must be non-negative, got {self.noise_sd}")


def read_sensor(state: PlantState, sensor: SensorModel, rng_stream: np.random.Generator) -> float:
    """Sample the chamber pressure, clamped to the sensor range."""
    reading = state.y
    if sensor.noise_sd > 0:
        reading += float(rng_stream.normal(0.0, sensor.noise_sd))
    return min(max(reading, sensor.range_low), sensor.range_high)
