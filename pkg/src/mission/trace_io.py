"""CSV encoding of mission traces."""

from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd

from ..control.ffp_controller import ControllerMode
from .schema.mission_types import TraceRecord

TRACE_COLUMNS = [
    "t_s",
    "pwm_us",
    "command",
    "valve_in",
    "valve_de",
    "pump_on",
    "duty_pct",
    "pressure_kpa",
    "aperture_mm",
    "event",
]

_BOOL_COLUMNS = ["valve_in", "valve_de", "pump_on"]


def trace_to_frame(trace: Sequence[TraceRecord]) -> pd.DataFrame:
    """Tabulate a trace with the fixed CSV column order."""
    rows = [
        (
            r.t,
            r.pwm,
            r.command.value,
            int(r.valve_inflate),
            int(r.valve_deflate),
            int(r.pump_on),
            r.duty,
            r.y,
            r.aperture,
            r.event or "",
        )
        for r in trace
    ]
    return pd.DataFrame(rows, columns=TRACE_COLUMNS)


def write_trace_csv(trace: Sequence[TraceRecord], path: Union[str, Path]) -> Path:
    """Write a trace as CSV with a header row and LF line endings."""
    path = Path(path)
    trace_to_frame(trace).to_csv(path, index=False, lineterminator="\n")
    return path


def read_trace_csv(path: Union[str, Path]) -> List[TraceRecord]:
    """Parse a trace CSV back into records, floats bit-exact."""
    frame = pd.read_csv(path, float_precision="round_trip", keep_default_na=False)
    missing = [c for c in TRACE_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"Trace file {path} is missing columns: {missing}")
    frame["event"] = frame["event"].astype(str)
    frame["command"] = frame["command"].astype(str)
    for column in _BOOL_COLUMNS:
        frame[column] = frame[column].astype(bool)

    return [
        TraceRecord(
            t=float(row.t_s),
            pwm=int(row.pwm_us),
            command=ControllerMode(row.command),
            valve_inflate=bool(row.valve_in),
            valve_deflate=bool(row.valve_de),
            pump_on=bool(row.pump_on),
            duty=float(row.duty_pct),
            y=float(row.pressure_kpa),
            aperture=float(row.aperture_mm),
            event=row.event or None,
        )
        for row in frame.itertuples(index=False)
    ]
