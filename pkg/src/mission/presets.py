"""Mission scripts and setpoint profiles reproducing the gripper experiments."""

from typing import Dict, List, Tuple

from ..command.airflow import PwmBands, encode_mode
from ..control.ffp_controller import ControllerKind, ControllerMode, ControllerParams
from ..grasp.schema.object_types import ObjectSpec
from .schema.mission_types import (
    Ascend,
    AssertHold,
    Descend,
    Land,
    MissionScript,
    MissionStep,
    PlaceObject,
    SetPwm,
)

STEP_PROFILES = ("full", "inflate-only", "deflate-only")
MISSION_PRESETS = ("aerial-grasp", "payload", "landing-ground", "landing-tilt")
BATCH_PRESETS = ("aerial-grasp", "landing-ground", "landing-tilt", "grasp-matrix")

# Default object per mission preset, by name in the object set.
PRESET_OBJECTS: Dict[str, str] = {
    "aerial-grasp": "water_bottle",
    "payload": "plastic_container",
}

TILT_INCLINE_DEG = 10.0


def step_profile(
    name: str, params: ControllerParams = ControllerParams()
) -> Tuple[List[Tuple[float, float]], float]:
    """
    Setpoint sequence and duration of a step-response profile.

    ``full`` rests, deflates to r_deflate and then inflates to r_inflate.
    """
    if name == "full":
        return [(0.0, 0.0), (2.0, params.r_deflate), (12.0, params.r_inflate)], 32.0
    elif name == "inflate-only":
        return [(0.0, params.r_deflate), (10.0, params.r_inflate)], 30.0
    elif name == "deflate-only":
        return [(0.0, 0.0), (2.0, params.r_deflate)], 12.0
    else:
        raise ValueError(f"Unknown step-response profile: {name}")


def _pwm(mode: ControllerMode, bands: PwmBands) -> SetPwm:
    return SetPwm(encode_mode(mode, bands))


def aerial_grasp_script(
    obj: ObjectSpec,
    controller: ControllerKind = ControllerKind.FFP,
    seed: int = 0,
    offset_mm: float = 0.0,
    hold_s: float = 30.0,
    bands: PwmBands = PwmBands(),
) -> MissionScript:
    """Approach open, descend over the object in flight, close, lift and hold."""
    steps = (
        MissionStep(0.0, _pwm(ControllerMode.DEFLATION, bands)),
        MissionStep(1.0, PlaceObject(obj, offset_mm)),
        MissionStep(3.0, Descend()),
        MissionStep(4.0, _pwm(ControllerMode.INFLATION, bands)),
        MissionStep(10.0, Ascend()),
        MissionStep(10.5, AssertHold(hold_s)),
    )
    return MissionScript(
        steps=steps,
        duration=10.5 + hold_s,
        controller=controller,
        seed=seed,
        aerial=True,
        name="aerial-grasp",
    )


def payload_script(
    obj: ObjectSpec,
    controller: ControllerKind = ControllerKind.FFP,
    seed: int = 0,
    hold_s: float = 30.0,
    bands: PwmBands = PwmBands(),
) -> MissionScript:
    """Grasp on the ground before take-off, then hover with the payload."""
    steps = (
        MissionStep(0.0, _pwm(ControllerMode.DEFLATION, bands)),
        MissionStep(0.5, PlaceObject(obj, 0.0)),
        MissionStep(1.0, Descend()),
        MissionStep(2.0, _pwm(ControllerMode.INFLATION, bands)),
        MissionStep(9.0, Ascend()),
        MissionStep(9.5, AssertHold(hold_s)),
    )
    return MissionScript(
        steps=steps,
        duration=9.5 + hold_s,
        controller=controller,
        seed=seed,
        aerial=False,
        name="payload",
    )


def static_grasp_script(
    obj: ObjectSpec,
    controller: ControllerKind = ControllerKind.FFP,
    seed: int = 0,
    offset_mm: float = 0.0,
    hold_s: float = 30.0,
    bands: PwmBands = PwmBands(),
) -> MissionScript:
    """Bench grasp: object placed by hand under the rack-mounted gripper and held."""
    steps = (
        MissionStep(0.0, _pwm(ControllerMode.DEFLATION, bands)),
        MissionStep(0.2, PlaceObject(obj, offset_mm)),
        MissionStep(0.4, Descend()),
        MissionStep(0.5, _pwm(ControllerMode.INFLATION, bands)),
        MissionStep(7.0, AssertHold(hold_s)),
    )
    return MissionScript(
        steps=steps,
        duration=7.0 + hold_s,
        controller=controller,
        seed=seed,
        aerial=False,
        name="static-grasp",
    )


def landing_script(
    incline_deg: float = 0.0,
    controller: ControllerKind = ControllerKind.FFP,
    seed: int = 0,
    bands: PwmBands = PwmBands(),
) -> MissionScript:
    """Deflate to open the fingers as landing gear, then touch down."""
    steps = (
        MissionStep(0.0, _pwm(ControllerMode.DEFLATION, bands)),
        MissionStep(0.5, Land(incline_deg)),
    )
    return MissionScript(
        steps=steps,
        duration=0.5,
        controller=controller,
        seed=seed,
        name="landing-tilt" if incline_deg > 0 else "landing-ground",
    )


def landing_incline(preset: str, incline_deg: float = TILT_INCLINE_DEG) -> float:
    """Platform incline used by a landing preset."""
    if preset == "landing-ground":
        return 0.0
    elif preset == "landing-tilt":
        return incline_deg
    else:
        raise ValueError(f"Not a landing preset: {preset}")
