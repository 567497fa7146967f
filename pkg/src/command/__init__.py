"""PWM command decoding and the valve/pump airflow state machine."""

from .airflow import (
    AirflowMachine,
    AirflowState,
    InvalidSignalError,
    PwmBands,
    PwmPulse,
    decode_pwm,
    decode_pwm_failsafe,
    encode_mode,
    transition,
)

__all__ = [
    "AirflowMachine",
    "AirflowState",
    "InvalidSignalError",
    "PwmBands",
    "PwmPulse",
    "decode_pwm",
    "decode_pwm_failsafe",
    "encode_mode",
    "transition",
]
