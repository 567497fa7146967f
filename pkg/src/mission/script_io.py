"""Loading custom mission scripts from JSON."""

import json
import logging
import math
import os
from typing import Any, Dict, Mapping, Optional

from ..control.ffp_controller import ControllerKind
from ..grasp.schema.object_types import ObjectFixture
from .schema.mission_types import (
    Action,
    Ascend,
    AssertHold,
    Descend,
    Land,
    MissionScript,
    MissionStep,
    PlaceObject,
    ScriptValidationError,
    SetPwm,
)

ACTION_NAMES = ("set_pwm", "place_object", "descend", "ascend", "assert_hold", "land")


def _require(entry: Mapping[str, Any], key: str, index: int) -> Any:
    if key not in entry:
        raise ScriptValidationError(f"Step {index}: missing required key '{key}'")
    return entry[key]


def _number(value: Any, key: str, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ScriptValidationError(f"{where}: '{key}' must be a number, got {value!r}")
    return float(value)


def _build_action(
    entry: Mapping[str, Any], index: int, fixtures: Mapping[str, ObjectFixture]
) -> Action:
    where = f"Step {index}"
    name = _require(entry, "action", index)
    if name == "set_pwm":
        width = _require(entry, "width_us", index)
        if isinstance(width, bool) or not isinstance(width, int):
            raise ScriptValidationError(f"Step {index}: width_us must be an integer, got {width!r}")
        return SetPwm(width)
    elif name == "place_object":
        object_name = _require(entry, "object", index)
        if not isinstance(object_name, str) or object_name not in fixtures:
            raise ScriptValidationError(f"Step {index}: unknown object '{object_name}'")
        offset = _number(entry.get("offset_mm", 0.0), "offset_mm", where)
        return PlaceObject(fixtures[object_name].spec, offset)
    elif name == "descend":
        return Descend()
    elif name == "ascend":
        return Ascend()
    elif name == "assert_hold":
        return AssertHold(_number(_require(entry, "duration_s", index), "duration_s", where))
    elif name == "land":
        return Land(_number(entry.get("incline_deg", 0.0), "incline_deg", where))
    else:
        raise ScriptValidationError(
            f"Step {index}: unknown action '{name}' (expected one of {', '.join(ACTION_NAMES)})"
        )


def load_mission_script(
    config_dict: Dict[str, Any],
    fixtures: Mapping[str, ObjectFixture],
    controller: Optional[ControllerKind] = None,
    seed: Optional[int] = None,
) -> MissionScript:
    """
    Build a mission script from its JSON structure.

    Example:
        {"name": "bench", "duration_s": 12, "aerial": false,
         "steps": [{"at": 0, "action": "set_pwm", "width_us": 1000},
                   {"at": 1, "action": "place_object", "object": "pen"}]}

    Args:
        config_dict: Parsed script
        fixtures: Object set used to resolve ``place_object`` names
        controller: Overrides the script's controller when given
        seed: Overrides the script's seed when given

    Returns:
        A validated MissionScript

    Raises:
        ScriptValidationError: On missing keys, unknown actions or objects,
            or invalid timing
    """
    if not isinstance(config_dict, dict):
        raise ScriptValidationError("Mission script must be a JSON object")
    steps_data = config_dict.get("steps")
    if not isinstance(steps_data, list):
        raise ScriptValidationError("Mission script needs a 'steps' list")

    steps = []
    for index, entry in enumerate(steps_data):
        if not isinstance(entry, dict):
            raise ScriptValidationError(f"Step {index}: must be an object")
        at = _number(_require(entry, "at", index), "at", f"Step {index}")
        steps.append(MissionStep(at, _build_action(entry, index, fixtures)))

    try:
        script_controller = controller or ControllerKind(config_dict.get("controller", "ffp"))
    except ValueError as e:
        raise ScriptValidationError(f"Unknown controller: {config_dict.get('controller')}") from e

    duration = _number(
        config_dict.get("duration_s", steps[-1].at if steps else 0.0), "duration_s", "Mission script"
    )
    if seed is None:
        seed = config_dict.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ScriptValidationError(f"Mission script: 'seed' must be an integer, got {seed!r}")
    script = MissionScript(
        steps=tuple(steps),
        duration=duration,
        controller=script_controller,
        seed=seed,
        aerial=bool(config_dict.get("aerial", False)),
        name=str(config_dict.get("name", "mission")),
    )
    script.validate()
    return script


def load_mission_script_file(
    config_file_path: str,
    fixtures: Mapping[str, ObjectFixture],
    controller: Optional[ControllerKind] = None,
    seed: Optional[int] = None,
) -> MissionScript:
    """Load a mission script JSON file; see load_mission_script."""
    logger = logging.getLogger(__name__)
    if not os.path.exists(config_file_path):
        raise ScriptValidationError(f"Mission script not found: {config_file_path}")
    try:
        with open(config_file_path, "r") as f:
            config_dict = json.load(f)
    except json.JSONDecodeError as e:
        raise ScriptValidationError(
            f"{config_file_path}:{e.lineno}: invalid JSON: {e.msg}"
        ) from e
    script = load_mission_script(config_dict, fixtures, controller, seed)
    logger.info(f"Loaded mission script '{script.name}' with {len(script.steps)} steps")
    return script
