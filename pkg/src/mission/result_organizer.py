"""Organizer saving traces, metrics and batch summaries to an output directory."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

import pandas as pd

from .monte_carlo import BatchSummary
from .schema.mission_types import MissionResult, SegmentMetrics, TraceRecord
from .trace_io import write_trace_csv


class ResultOrganizer:
    """Writes simulation outputs under one directory."""

    def __init__(self, out_dir: str = "results"):
        self.logger = logging.getLogger(__name__)
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def _write_table(self, rows: List[Dict[str, Any]], filename: str) -> Path:
        path = self.out_dir / filename
        pd.DataFrame(rows).to_csv(path, index=False, lineterminator="\n")
        self.logger.info(f"Saved {len(rows)} rows to {path}")
        return path

    def save_trace(self, name: str, trace: Sequence[TraceRecord]) -> Path:
        """Save a per-tick trace as CSV."""
        path = write_trace_csv(trace, self.out_dir / f"{name}.csv")
        self.logger.info(f"Saved trace ({len(trace)} ticks) to {path}")
        return path

    def save_segment_metrics(self, name: str, rows: List[Dict[str, Any]]) -> Path:
        """Save step-response metrics rows (already labelled per controller)."""
        return self._write_table(rows, f"{name}.csv")

    def save_mission_result(self, name: str, result: MissionResult) -> Path:
        """Save the mission outcome and metrics as JSON."""
        path = self.out_dir / f"{name}_result.json"
        with open(path, "w") as f:
            json.dump(result.to_dict(), f, indent=2)
        self.logger.info(f"Saved mission result to {path}")
        return path

    def save_batch_summaries(self, name: str, summaries: Sequence[BatchSummary]) -> Path:
        """Save batch summary rows as CSV."""
        return self._write_table([s.to_dict() for s in summaries], f"{name}.csv")


def metrics_rows(controller: str, metrics: Sequence[SegmentMetrics]) -> List[Dict[str, Any]]:
    """Label segment metrics with the controller that produced them."""
    rows = []
    for m in metrics:
        row = {"controller": controller}
        row.update(m.to_dict())
        rows.append(row)
    return rows
