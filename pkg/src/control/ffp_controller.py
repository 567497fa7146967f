"""Feed-forward proportional pressure controller for the air pump."""

from dataclasses import dataclass
from enum import Enum


class ControllerMode(Enum):
    """Gripper command driving the controller branch."""

    INFLATION = "inflation"
    DEFLATION = "deflation"
    REST = "rest"


class ControllerKind(Enum):
    """Available control laws."""

    FFP = "ffp"
    P_ONLY = "p"


class ControllerModeError(ValueError):
    """Raised when a control quantity is requested for the Rest mode."""


@dataclass(frozen=True)
class ControllerParams:
    """Pump regulation parameters (setpoints in kPa, duties in percent)."""

    r_inflate: float = 85.0
    r_deflate: float = -25.0
    p_max: float = 100.0
    p_min_inflate: float = 86.0
    p_min_deflate: float = 63.0
    f_in: float = 0.8
    hold_band: float = 2.0

    def __post_init__(self):
        if not 0 < self.p_min_inflate < self.p_max:
            raise ValueError(
                f"p_min_inflate must be in (0, p_max={self.p_max}), got {self.p_min_inflate}"
            )
        if not 0 < self.p_min_deflate < self.p_max:
            raise ValueError(
                f"p_min_deflate must be in (0, p_max={self.p_max}), got {self.p_min_deflate}"
            )
        if self.r_inflate <= 0:
            raise ValueError(f"r_inflate must be positive, got {self.r_inflate}")
        if self.r_deflate >= 0:
            raise ValueError(f"r_deflate must be negative, got {self.r_deflate}")
        if self.hold_band <= 0:
            raise ValueError(f"hold_band must be positive, got {self.hold_band}")

    def p_min(self, mode: ControllerMode) -> float:
        """Minimum pump duty for the given active mode."""
        _require_active(mode)
        return self.p_min_inflate if mode is ControllerMode.INFLATION else self.p_min_deflate


@dataclass(frozen=True)
class ControllerOutput:
    """One evaluation of a control law."""

    e: float
    Kp: float
    u: float
    g: float
    duty: float
    holding: bool

    def to_dict(self) -> dict:
        """Convert to dictionary representation."""
        return {
            "e": self.e,
            "Kp": self.Kp,
            "u": self.u,
            "g": self.g,
            "duty": self.duty,
            "holding": self.holding,
        }


def _require_active(mode: ControllerMode) -> None:
    if mode is ControllerMode.REST:
        raise ControllerModeError("Rest mode has no setpoint; use rest_output()")


def setpoint(params: ControllerParams, mode: ControllerMode) -> float:
    """Return the setpoint r for an active mode."""
    _require_active(mode)
    return params.r_inflate if mode is ControllerMode.INFLATION else params.r_deflate


def error(r: float, y: float) -> float:
    """Pressure error e = r - y."""
    return r - y


def proportional_gain(params: ControllerParams, mode: ControllerMode) -> float:
    """
    Proportional gain Kp = (p_max - p_min) / r.

    Signed: negative for deflation since r < 0 there.

    Raises:
        ControllerModeError: If mode is Rest (r = 0 makes the gain singular)
    """
    return (params.p_max - params.p_min(mode)) / setpoint(params, mode)


def feed_forward(params: ControllerParams, mode: ControllerMode) -> float:
    """Feed-forward coefficient: f_in for inflation, 1 / r_deflate for deflation."""
    _require_active(mode)
    if mode is ControllerMode.INFLATION:
        return params.f_in
    return 1.0 / params.r_deflate


def _supervise(
    params: ControllerParams, e: float, kp: float, u: float, g: float, latched: bool
) -> ControllerOutput:
    # Enter hold inside the band, leave it only beyond twice the band.
    limit = 2.0 * params.hold_band if latched else params.hold_band
    holding = abs(e) <= limit
    duty = 0.0 if holding else min(max(g, 0.0), params.p_max)
    return ControllerOutput(e=e, Kp=kp, u=u, g=g, duty=duty, holding=holding)


def _proportional_terms(params: ControllerParams, mode: ControllerMode, y: float):
    e = error(setpoint(params, mode), y)
    kp = proportional_gain(params, mode)
    u = kp * e + params.p_min(mode)
    return e, kp, u


def ffp_output(
    params: ControllerParams, mode: ControllerMode, y: float, latched: bool = False
) -> ControllerOutput:
    """
    Feed-forward proportional output g = u + f * y, clamped to [0, p_max].

    Args:
        params: Controller parameters
        mode: Inflation or Deflation
        y: Measured gauge pressure in kPa
        latched: Whether the supervisor was holding on the previous tick

    Returns:
        ControllerOutput with pre-clamp u and g and the applied duty

    Raises:
        ControllerModeError: If mode is Rest
    """
    e, kp, u = _proportional_terms(params, mode, y)
    g = u + feed_forward(params, mode) * y
    return _supervise(params, e, kp, u, g, latched)


def p_only_output(
    params: ControllerParams, mode: ControllerMode, y: float, latched: bool = False
) -> ControllerOutput:
    """Proportional-only baseline: same as ffp_output with g = u."""
    e, kp, u = _proportional_terms(params, mode, y)
    return _supervise(params, e, kp, u, u, latched)


def rest_output() -> ControllerOutput:
    """Output while the gripper stays at rest: pump idle, valves closed."""
    return ControllerOutput(e=0.0, Kp=0.0, u=0.0, g=0.0, duty=0.0, holding=True)


def control_output(
    kind: ControllerKind,
    params: ControllerParams,
    mode: ControllerMode,
    y: float,
    latched: bool = False,
) -> ControllerOutput:
    """Dispatch to the selected control law, bypassing it entirely at rest."""
    if mode is ControllerMode.REST:
        return rest_output()
    if kind is ControllerKind.FFP:
        return ffp_output(params, mode, y, latched)
    elif kind is ControllerKind.P_ONLY:
        return p_only_output(params, mode, y, latched)
    else:
        raise ValueError(f"Unknown controller kind: {kind}")
