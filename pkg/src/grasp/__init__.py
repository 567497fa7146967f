"""Gripper aperture, grasp feasibility, payload and landing models."""

from .feasibility import (
    GraspParams,
    InclineOutOfRangeError,
    aperture,
    grasp_feasible,
    graspable_span,
    landing_outcome,
    landing_success_probability,
    payload_check,
)
from .schema.object_types import (
    BaseConfig,
    Box,
    Cylinder,
    GraspOutcome,
    GraspResult,
    GripperGeometry,
    ObjectFixture,
    ObjectSpec,
    Sphere,
    load_object_config,
    load_object_set,
)

__all__ = [
    "BaseConfig",
    "Box",
    "Cylinder",
    "GraspOutcome",
    "GraspParams",
    "GraspResult",
    "GripperGeometry",
    "InclineOutOfRangeError",
    "ObjectFixture",
    "ObjectSpec",
    "Sphere",
    "aperture",
    "grasp_feasible",
    "graspable_span",
    "landing_outcome",
    "landing_success_probability",
    "load_object_config",
    "load_object_set",
    "payload_check",
]
