"""Chamber pressure plant and pressure sensor models."""

from .pneumatic_plant import (
    InvalidGeometryError,
    PlantParams,
    PlantState,
    analytic_rise,
    calibrate_k_pump,
    plant_step,
)
from .sensor import SensorModel, read_sensor

__all__ = [
    "InvalidGeometryError",
    "PlantParams",
    "PlantState",
    "SensorModel",
    "analytic_rise",
    "calibrate_k_pump",
    "plant_step",
    "read_sensor",
]
