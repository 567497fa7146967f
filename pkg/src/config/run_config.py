"""Validated run configuration merged from defaults, file, environment and flags."""

import json
import os
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..command.airflow import PwmBands
from ..control.ffp_controller import ControllerKind, ControllerParams
from ..grasp.feasibility import GraspParams
from ..grasp.schema.object_types import BaseConfig, GripperGeometry
from ..mission.schema.mission_types import MissionParams, SimulationConfig
from ..plant.pneumatic_plant import PlantParams
from ..plant.sensor import SensorModel

ENV_PREFIX = "GRIPPER_SIM__"


class ConfigError(ValueError):
    """Configuration problem, anchored to a file line when one is known."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.path = path
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.path and self.line:
            return f"{self.path}:{self.line}: {self.message}"
        if self.path:
            return f"{self.path}: {self.message}"
        return self.message


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ControllerSection(_Section):
    r_inflate_kpa: float = 85.0
    r_deflate_kpa: float = -25.0
    p_max_pct: float = Field(100.0, gt=0, le=100)
    p_min_inflate_pct: float = 86.0
    p_min_deflate_pct: float = 63.0
    f_in: float = 0.8
    hold_band_kpa: float = 2.0


class CommandSection(_Section):
    envelope_low_us: int = 800
    envelope_high_us: int = 2200
    deflate_below_us: int = 1300
    inflate_above_us: int = 1700


class PlantSection(_Section):
    p_pump_in_kpa: float = 120.0
    p_pump_out_kpa: float = -60.0
    k_pump_per_s: float = 0.284
    k_leak_per_s: float = 0.01
    dt_s: float = 0.01


class SensorSection(_Section):
    range_low_kpa: float = -100.0
    range_high_kpa: float = 300.0
    noise_sd_kpa: float = Field(0.0, ge=0)


class BaseGeometrySection(_Section):
    aperture_open_mm: float
    finger_length_mm: float = 100.0
    finger_width_mm: float = 15.0
    mount_angle_deg: float = 25.0
    close_onset_kpa: float = 58.0
    close_full_kpa: float = 85.0
    open_full_kpa: float = -25.0
    pair_gap_mm: Optional[float] = None
    gripper_mass_g: float = 0.0


class GeometrySection(_Section):
    x_base: BaseGeometrySection = Field(
        default_factory=lambda: BaseGeometrySection(aperture_open_mm=180.0, gripper_mass_g=110.0)
    )
    h_base: BaseGeometrySection = Field(
        default_factory=lambda: BaseGeometrySection(
            aperture_open_mm=145.0, pair_gap_mm=40.0, gripper_mass_g=106.0
        )
    )


class GraspSection(_Section):
    blow_away_mass_g: float = 70.0
    h_base_mass_limit_g: float = 200.0
    x_base_mass_limit_g: float = 330.0
    non_static_success: float = 0.8
    max_takeoff_mass_g: float = 1025.0
    sav_mass_g: float = 808.0
    tilt_reference_deg: float = 10.0
    x_base_tilt_success: float = 0.6


class MissionSection(_Section):
    settle_window_s: float = 1.0
    steady_state_fraction: float = 0.2
    offset_range_mm: float = 15.0
    hold_s: float = 30.0
    object_set: str = "config/object_set.json"


class RunSection(_Section):
    seed: int = Field(0, ge=0, lt=2**64)
    out_dir: str = "results"
    # None: missions use ffp, step-response compares both laws.
    controller: Optional[Literal["ffp", "p"]] = None
    preset: Optional[str] = None
    profile: Literal["full", "inflate-only", "deflate-only"] = "full"
    trials: int = Field(10, ge=1)
    base: Optional[Literal["x", "h"]] = None
    workers: int = Field(1, ge=1)
    incline_deg: float = Field(10.0, ge=0, le=45)


class RunConfig(_Section):
    """Merged parameter set for every module plus run selection."""

    controller: ControllerSection = Field(default_factory=ControllerSection)
    command: CommandSection = Field(default_factory=CommandSection)
    plant: PlantSection = Field(default_factory=PlantSection)
    sensor: SensorSection = Field(default_factory=SensorSection)
    geometry: GeometrySection = Field(default_factory=GeometrySection)
    grasp: GraspSection = Field(default_factory=GraspSection)
    mission: MissionSection = Field(default_factory=MissionSection)
    run: RunSection = Field(default_factory=RunSection)

    @model_validator(mode="after")
    def _check_module_invariants(self) -> "RunConfig":
        # Dataclass __post_init__ checks raise ValueError, reported by pydantic.
        self.to_simulation_config()
        return self

    @property
    def controller_kind(self) -> ControllerKind:
        return ControllerKind(self.run.controller or "ffp")

    @property
    def base(self) -> Optional[BaseConfig]:
        return BaseConfig(self.run.base) if self.run.base else None

    def _geometry(self, base: BaseConfig, section: BaseGeometrySection) -> GripperGeometry:
        return GripperGeometry(
            base=base,
            aperture_open=section.aperture_open_mm,
            finger_length=section.finger_length_mm,
            finger_width=section.finger_width_mm,
            mount_angle=section.mount_angle_deg,
            close_onset=section.close_onset_kpa,
            close_full=section.close_full_kpa,
            open_full=section.open_full_kpa,
            pair_gap=section.pair_gap_mm,
            gripper_mass=section.gripper_mass_g,
        )

    def to_simulation_config(self) -> SimulationConfig:
        """Convert to the module parameter dataclasses."""
        c, p, s, g, m = self.controller, self.plant, self.sensor, self.grasp, self.mission
        return SimulationConfig(
            controller=ControllerParams(
                r_inflate=c.r_inflate_kpa,
                r_deflate=c.r_deflate_kpa,
                p_max=c.p_max_pct,
                p_min_inflate=c.p_min_inflate_pct,
                p_min_deflate=c.p_min_deflate_pct,
                f_in=c.f_in,
                hold_band=c.hold_band_kpa,
            ),
            bands=PwmBands(
                envelope_low=self.command.envelope_low_us,
                envelope_high=self.command.envelope_high_us,
                deflate_below=self.command.deflate_below_us,
                inflate_above=self.command.inflate_above_us,
            ),
            plant=PlantParams(
                p_pump_in=p.p_pump_in_kpa,
                p_pump_out=p.p_pump_out_kpa,
                k_pump=p.k_pump_per_s,
                k_leak=p.k_leak_per_s,
                dt=p.dt_s,
            ),
            sensor=SensorModel(
                range_low=s.range_low_kpa, range_high=s.range_high_kpa, noise_sd=s.noise_sd_kpa
            ),
            x_base=self._geometry(BaseConfig.X_BASE, self.geometry.x_base),
            h_base=self._geometry(BaseConfig.H_BASE, self.geometry.h_base),
            base=self.base or BaseConfig.H_BASE,
            grasp=GraspParams(
                blow_away_mass=g.blow_away_mass_g,
                h_base_mass_limit=g.h_base_mass_limit_g,
                x_base_mass_limit=g.x_base_mass_limit_g,
                non_static_success=g.non_static_success,
                max_takeoff_mass=g.max_takeoff_mass_g,
                sav_mass=g.sav_mass_g,
                tilt_reference_deg=g.tilt_reference_deg,
                x_base_tilt_success=g.x_base_tilt_success,
            ),
            mission=MissionParams(
                settle_window_s=m.settle_window_s,
                steady_state_fraction=m.steady_state_fraction,
                offset_range_mm=m.offset_range_mm,
                hold_s=m.hold_s,
            ),
        )


def _merge(target: Dict[str, Any], source: Mapping[str, Any]) -> Dict[str, Any]:
    for key, value in source.items():
        if isinstance(value, Mapping) and isinstance(target.get(key), dict):
            _merge(target[key], value)
        elif isinstance(value, Mapping):
            target[key] = _merge({}, value)
        else:
            target[key] = value
    return target


def _parse_env_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def env_overrides(environ: Mapping[str, str]) -> Dict[str, Any]:
    """
    Nested overrides from ``GRIPPER_SIM__SECTION__KEY`` variables.

    Example: ``GRIPPER_SIM__PLANT__K_LEAK_PER_S=0.02``.
    """
    overrides: Dict[str, Any] = {}
    for name, raw in sorted(environ.items()):
        if not name.startswith(ENV_PREFIX):
            continue
        parts = [p.lower() for p in name[len(ENV_PREFIX):].split("__") if p]
        if not parts:
            continue
        node = overrides
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = _parse_env_value(raw)
    return overrides


def _locate_line(text: Optional[str], loc: Sequence[Union[str, int]]) -> Optional[int]:
    """1-based line of the innermost key of a validation error, following the key path."""
    if not text:
        return None
    lines = text.splitlines()
    line_index = 0
    found = None
    for key in loc:
        if not isinstance(key, str):
            continue
        needle = f'"{key}"'
        for i in range(line_index, len(lines)):
            if needle in lines[i]:
                found = line_index = i
                break
        else:
            break
    return None if found is None else found + 1


def _read_file(config_path: str) -> Tuple[Dict[str, Any], str]:
    if not os.path.exists(config_path):
        raise ConfigError("Config file not found", path=config_path)
    text = Path(config_path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON: {e.msg}", path=config_path, line=e.lineno) from e
    if not isinstance(data, dict):
        raise ConfigError("Top level must be an object of sections", path=config_path, line=1)
    return data, text


def load_run_config(
    config_path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Build and validate the run configuration.

    Precedence: built-in defaults < config file < environment < overrides.

    Args:
        config_path: Optional JSON config file
        overrides: Nested section/key values, typically from CLI flags
        environ: Environment mapping (defaults to os.environ)

    Returns:
        Fully validated RunConfig

    Raises:
        ConfigError: On unreadable files, malformed JSON, unknown keys or
            values violating module invariants
    """
    # Start from the defaults so partial nested sections keep their siblings.
    data: Dict[str, Any] = RunConfig().model_dump()
    text = None
    if config_path:
        file_data, text = _read_file(config_path)
        _merge(data, file_data)
    _merge(data, env_overrides(os.environ if environ is None else environ))
    if overrides:
        _merge(data, overrides)

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = tuple(first.get("loc", ()))
        where = ".".join(str(part) for part in loc)
        message = f"{where}: {first['msg']}" if where else first["msg"]
        raise ConfigError(message, path=config_path, line=_locate_line(text, loc)) from e
