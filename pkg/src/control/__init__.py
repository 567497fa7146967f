"""Pressure control laws for the pneumatic gripper.

Provides the feed-forward proportional controller, the proportional-only
baseline and the hold-band supervisor.
"""

from .ffp_controller import (
    ControllerKind,
    ControllerMode,
    ControllerModeError,
    ControllerOutput,
    ControllerParams,
    control_output,
    error,
    feed_forward,
    ffp_output,
    p_only_output,
    proportional_gain,
    rest_output,
    setpoint,
)

__all__ = [
    "ControllerKind",
    "ControllerMode",
    "ControllerModeError",
    "ControllerOutput",
    "ControllerParams",
    "control_output",
    "error",
    "feed_forward",
    "ffp_output",
    "p_only_output",
    "proportional_gain",
    "rest_output",
    "setpoint",
]
