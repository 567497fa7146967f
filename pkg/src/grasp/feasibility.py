"""Aperture ramp, grasp feasibility cascade, payload and landing outcomes."""

import logging
from dataclasses import dataclass

import numpy as np

from .schema.object_types import (
    BaseConfig,
    Box,
    GraspOutcome,
    GraspResult,
    GripperGeometry,
    ObjectSpec,
    Sphere,
)

MAX_INCLINE_DEG = 45.0


class InclineOutOfRangeError(ValueError):
    """Raised for landing inclines outside [0, 45] degrees."""


@dataclass(frozen=True)
class GraspParams:
    """Empirical thresholds for grasping, payload and landing."""

    blow_away_mass: float = 70.0
    h_base_mass_limit: float = 200.0
    x_base_mass_limit: float = 330.0
    non_static_success: float = 0.8
    max_takeoff_mass: float = 1025.0
    sav_mass: float = 808.0
    tilt_reference_deg: float = 10.0
    x_base_tilt_success: float = 0.6

    def __post_init__(self):
        if self.blow_away_mass < 0:
            raise ValueError("blow_away_mass must be non-negative")
        if self.h_base_mass_limit <= 0 or self.x_base_mass_limit <= 0:
            raise ValueError("Mass limits must be positive")
        if not 0 < self.non_static_success <= 1:
            raise ValueError("non_static_success must be in (0, 1]")
        if self.max_takeoff_mass <= self.sav_mass:
            raise ValueError("max_takeoff_mass must exceed sav_mass")
        if self.tilt_reference_deg <= 0:
            raise ValueError("tilt_reference_deg must be positive")
        if not 0 <= self.x_base_tilt_success <= 1:
            raise ValueError("x_base_tilt_success must be in [0, 1]")

    @property
    def hover_payload_limit(self) -> float:
        return self.max_takeoff_mass - self.sav_mass

    def mass_limit(self, base: BaseConfig) -> float:
        return self.h_base_mass_limit if base is BaseConfig.H_BASE else self.x_base_mass_limit


def aperture(pressure: float, geom: GripperGeometry) -> float:
    """
    Fingertip opening in mm for a chamber pressure in kPa.

    Flat at aperture_open up to close_onset, linear down to zero at
    close_full, zero beyond.
    """
    return float(
        np.interp(pressure, [geom.close_onset, geom.close_full], [geom.aperture_open, 0.0])
    )


def graspable_span(obj: ObjectSpec) -> float:
    """Horizontal extent the fingers must close around."""
    shape = obj.shape
    if isinstance(shape, Box):
        return min(shape.width, shape.depth)
    return shape.diameter


def grasp_feasible(
    obj: ObjectSpec,
    geom: GripperGeometry,
    offset: float,
    aerial: bool,
    params: GraspParams = GraspParams(),
) -> GraspOutcome:
    """
    Evaluate a grasp attempt with the gripper fully opened over the object.

    Checks run in order and the first match wins: downwash blow-away for
    aerial approaches, span against the open aperture, H-base pair gap for
    spheres, lateral offset tolerance, mass limit of the base.

    Args:
        obj: Target object
        geom: Gripper configuration
        offset: Lateral placement error in mm (sign irrelevant)
        aerial: Whether the approach is made in flight
        params: Empirical thresholds

    Returns:
        GraspOutcome; Success carries 0.8 for a non-static CG, else 1.0
    """
    span = graspable_span(obj)

    if aerial and obj.mass < params.blow_away_mass:
        return GraspOutcome(GraspResult.BLOW_AWAY)
    if span >= geom.aperture_open:
        return GraspOutcome(GraspResult.GEOMETRY_MISMATCH)
    if geom.base is BaseConfig.H_BASE and isinstance(obj.shape, Sphere):
        if obj.shape.diameter < geom.pair_gap:
            return GraspOutcome(GraspResult.GEOMETRY_MISMATCH)
    if abs(offset) > (geom.aperture_open - span) / 2.0:
        return GraspOutcome(GraspResult.OFFSET_OUT_OF_TOLERANCE)
    if obj.mass > params.mass_limit(geom.base):
        return GraspOutcome(GraspResult.TOO_HEAVY)

    probability = params.non_static_success if obj.non_static_cg else 1.0
    return GraspOutcome(GraspResult.SUCCESS, success_probability=probability)


def payload_check(
    obj: ObjectSpec, sav_mass: float, params: GraspParams = GraspParams()
) -> bool:
    """Whether the vehicle can hover with the object: mass <= max take-off - sav_mass."""
    limit = params.max_takeoff_mass - sav_mass
    ok = obj.mass <= limit
    logging.getLogger(__name__).debug(
        f"Payload {obj.mass} g vs limit {limit} g (payload-to-weight {obj.mass / sav_mass:.3f})"
    )
    return ok


def landing_success_probability(
    geom: GripperGeometry, incline: float, params: GraspParams = GraspParams()
) -> float:
    """Chance that a deflated gripper lands upright on an incline."""
    if not 0.0 <= incline <= MAX_INCLINE_DEG:
        raise InclineOutOfRangeError(
            f"Landing incline must be in [0, {MAX_INCLINE_DEG}] degrees, got {incline}"
        )
    # The H-base always flattens on the platform.
    if geom.base is BaseConfig.H_BASE:
        return 1.0
    drop_per_deg = (1.0 - params.x_base_tilt_success) / params.tilt_reference_deg
    return max(0.0, 1.0 - drop_per_deg * incline)


def landing_outcome(
    geom: GripperGeometry,
    incline: float,
    rng_stream: np.random.Generator,
    params: GraspParams = GraspParams(),
) -> bool:
    """Draw one landing on an incline from the seeded stream."""
    probability = landing_success_probability(geom, incline, params)
    return bool(rng_stream.random() < probability)
