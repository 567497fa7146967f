"""Step-response figures computed from a simulated trace."""

import math
from typing import List, Optional, Sequence

import numpy as np

from ..control.ffp_controller import ControllerMode
from .schema.mission_types import MissionParams, SegmentMetrics, TraceRecord


def _rise_time(records: Sequence[TraceRecord], setpoint: float) -> Optional[float]:
    """Time between 10 % and 90 % of the step from the segment's first pressure."""
    y0 = records[0].y
    span = setpoint - y0
    if abs(span) < 1e-9:
        return None
    t10 = t90 = None
    for record in records:
        progress = (record.y - y0) / span
        if t10 is None and progress >= 0.1:
            t10 = record.t
        if progress >= 0.9:
            t90 = record.t
            break
    if t10 is None or t90 is None:
        return None
    return t90 - t10


def _settle_time(
    records: Sequence[TraceRecord], holding: Sequence[bool], window_ticks: int
) -> Optional[float]:
    """First entry into the hold band that is not left for the settle window."""
    run = 0
    settled_at = None
    # Walk backwards so run counts consecutive holding ticks from index i on.
    for i in range(len(records) - 1, -1, -1):
        run = run + 1 if holding[i] else 0
        if run > window_ticks:
            settled_at = i
    if settled_at is None:
        return None
    return records[settled_at].t - records[0].t


def segment_metrics(
    trace: Sequence[TraceRecord],
    holding: Sequence[bool],
    start: int,
    end: int,
    setpoint: float,
    command: ControllerMode,
    dt: float,
    params: MissionParams = MissionParams(),
) -> SegmentMetrics:
    """
    Rise, settle and steady-state error for trace[start:end].

    Args:
        trace: Full mission trace
        holding: Supervisor hold flag for every trace record
        start: Index of the first record of the segment
        end: Index one past the last record
        setpoint: Pressure setpoint of the segment in kPa (0 at rest)
        command: Command active during the segment
        dt: Tick length in seconds
        params: Settle window and steady-state fraction

    Returns:
        SegmentMetrics with times relative to the segment start
    """
    records = trace[start:end]
    flags = holding[start:end]
    if not records:
        raise ValueError("Segment contains no trace records")

    active = command is not ControllerMode.REST
    window_ticks = int(round(params.settle_window_s / dt))
    tail = max(1, math.ceil(params.steady_state_fraction * len(records)))
    errors = np.abs(setpoint - np.array([r.y for r in records[-tail:]]))

    return SegmentMetrics(
        start=records[0].t,
        end=records[-1].t,
        setpoint=setpoint,
        command=command,
        rise_time_s=_rise_time(records, setpoint) if active else None,
        settle_time_s=_settle_time(records, flags, window_ticks) if active else None,
        steady_state_error_kPa=float(errors.mean()),
    )


def split_segments(starts: List[int], length: int) -> List[range]:
    """Index ranges between consecutive segment starts."""
    bounds = list(starts) + [length]
    return [range(bounds[i], bounds[i + 1]) for i in range(len(starts))]
