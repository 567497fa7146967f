"""Object, gripper geometry and grasp outcome definitions."""

import json
import os
from dataclasses import astuple, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Union


class BaseConfig(Enum):
    """Modular base the four fingers are mounted on."""

    X_BASE = "x"
    H_BASE = "h"


class ShapeKind(Enum):
    CYLINDER = "cylinder"
    SPHERE = "sphere"
    BOX = "box"


class GraspResult(Enum):
    """Outcome categories of a grasp attempt."""

    SUCCESS = "Success"
    BLOW_AWAY = "BlowAway"
    TOO_HEAVY = "TooHeavy"
    GEOMETRY_MISMATCH = "GeometryMismatch"
    OFFSET_OUT_OF_TOLERANCE = "OffsetOutOfTolerance"


@dataclass(frozen=True)
class Cylinder:
    diameter: float
    height: float

    kind = ShapeKind.CYLINDER


@dataclass(frozen=True)
class Sphere:
    diameter: float

    kind = ShapeKind.SPHERE


@dataclass(frozen=True)
class Box:
    width: float
    depth: float
    height: float

    kind = ShapeKind.BOX


Shape = Union[Cylinder, Sphere, Box]


@dataclass(frozen=True)
class ObjectSpec:
    """A grasp target: primitive shape (mm), mass (g) and CG behaviour."""

    shape: Shape
    mass: float
    non_static_cg: bool = False
    name: str = ""

    def __post_init__(self):
        dims = astuple(self.shape)
        if any(d <= 0 for d in dims):
            raise ValueError(f"Object dimensions must be positive, got {self.shape}")
        if self.mass <= 0:
            raise ValueError(f"Object mass must be positive, got {self.mass}")


@dataclass(frozen=True)
class GripperGeometry:
    """Finger mounting geometry and the pressure knots of the closing ramp."""

    base: BaseConfig
    aperture_open: float
    finger_length: float = 100.0
    finger_width: float = 15.0
    mount_angle: float = 25.0
    close_onset: float = 58.0
    close_full: float = 85.0
    open_full: float = -25.0
    pair_gap: Optional[float] = None
    gripper_mass: float = 0.0

    def __post_init__(self):
        if not self.open_full < self.close_onset < self.close_full:
            raise ValueError("Pressure knots must satisfy open_full < close_onset < close_full")
        if self.aperture_open <= 0:
            raise ValueError(f"aperture_open must be positive, got {self.aperture_open}")
        if self.base is BaseConfig.H_BASE and (self.pair_gap is None or self.pair_gap <= 0):
            raise ValueError("H-base geometry requires a positive pair_gap")

    @classmethod
    def x_base(cls, **overrides) -> "GripperGeometry":
        """Fully opened diagonal of 180 mm; four tips converge on the centroid."""
        values = {"aperture_open": 180.0, "gripper_mass": 110.0}
        values.update(overrides)
        return cls(base=BaseConfig.X_BASE, **values)

    @classmethod
    def h_base(cls, **overrides) -> "GripperGeometry":
        """Fully opened tip-to-tip distance of 145 mm; two 2-tip pairs wrap."""
        values = {"aperture_open": 145.0, "pair_gap": 40.0, "gripper_mass": 106.0}
        values.update(overrides)
        return cls(base=BaseConfig.H_BASE, **values)


@dataclass(frozen=True)
class GraspOutcome:
    """Result of a feasibility check."""

    result: GraspResult
    success_probability: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.success_probability <= 1.0:
            raise ValueError("success_probability must be in [0, 1]")
        if self.result is GraspResult.SUCCESS and self.success_probability <= 0:
            raise ValueError("A successful grasp needs a positive success probability")

    def to_dict(self) -> Dict[str, Any]:
        return {"result": self.result.value, "success_probability": self.success_probability}


@dataclass(frozen=True)
class ObjectFixture:
    """Object set entry with the outcomes expected for each base."""

    spec: ObjectSpec
    representative: bool = True
    in_test_set: bool = False
    description: str = ""
    expected: Dict[BaseConfig, GraspResult] = field(default_factory=dict)


def _build_shape(name: str, config: Dict[str, Any]):
    kind = config.get("shape")
    try:
        if kind == ShapeKind.CYLINDER.value:
            return Cylinder(diameter=config["diameter_mm"], height=config["height_mm"])
        if kind == ShapeKind.SPHERE.value:
            return Sphere(diameter=config["diameter_mm"])
        if kind == ShapeKind.BOX.value:
            return Box(
                width=config["width_mm"], depth=config["depth_mm"], height=config["height_mm"]
            )
    except KeyError as e:
        raise ValueError(f"Object '{name}' is missing dimension {e}") from e
    raise ValueError(f"Object '{name}' has unknown shape: {kind}")


def load_object_config(config_dict: Dict[str, Any]) -> Dict[str, ObjectFixture]:
    """
    Load the object set from a dictionary.

    Args:
        config_dict: Mapping of object name to shape, dimensions, mass and flags

    Returns:
        Dictionary of ObjectFixture objects keyed by name
    """
    fixtures = {}

    for name, config in config_dict.items():
        spec = ObjectSpec(
            shape=_build_shape(name, config),
            mass=config["mass_g"],
            non_static_cg=config.get("non_static_cg", False),
            name=name,
        )
        expected = {
            BaseConfig(base): GraspResult(result)
            for base, result in config.get("expected", {}).items()
        }
        fixtures[name] = ObjectFixture(
            spec=spec,
            representative=config.get("representative", True),
            in_test_set=config.get("in_test_set", False),
            description=config.get("description", ""),
            expected=expected,
        )

    return fixtures


def load_object_set(config_file_path: str = "config/object_set.json") -> Dict[str, ObjectFixture]:
    """
    Load the object set from its JSON data file.

    Args:
        config_file_path: Path to the object set file

    Returns:
        Dictionary of ObjectFixture objects keyed by name
    """
    if not os.path.exists(config_file_path):
        raise FileNotFoundError(f"Object set file not found: {config_file_path}")

    with open(config_file_path, "r") as f:
        config_dict = json.load(f)

    return load_object_config(config_dict)
