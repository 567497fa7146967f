"""Seeded Monte Carlo batches of missions."""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np

from ..control.ffp_controller import ControllerKind
from ..grasp.schema.object_types import BaseConfig, ObjectFixture
from .presets import aerial_grasp_script, landing_script, static_grasp_script
from .schema.mission_types import MissionResult, MissionScript, SimulationConfig
from .simulator import run_mission

# Builds the script for one trial from its seed and a generator for scripted randomness.
TrialFactory = Callable[[int, np.random.Generator], MissionScript]


def derive_seed(seed: int, trial_index: int) -> int:
    """Independent 64-bit seed for a trial, from (master seed, trial index)."""
    sequence = np.random.SeedSequence([seed, trial_index])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class BatchSpec:
    """A mission template repeated over independently seeded trials."""

    name: str
    factory: TrialFactory
    trials: int
    seed: int = 0
    config: SimulationConfig = field(default_factory=SimulationConfig)
    labels: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")


@dataclass(frozen=True)
class BatchSummary:
    """Success tally of a batch."""

    name: str
    total: int
    success_count: int
    failures: Dict[str, int]
    labels: Dict[str, str] = field(default_factory=dict)

    @property
    def fraction(self) -> float:
        return self.success_count / self.total

    def to_dict(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {"batch": self.name}
        row.update(self.labels)
        row.update(
            {
                "trials": self.total,
                "successes": self.success_count,
                "fraction": self.fraction,
                "failures": ";".join(f"{k}={v}" for k, v in sorted(self.failures.items())),
            }
        )
        return row


def summarize(name: str, results: Iterable[MissionResult], labels=None) -> BatchSummary:
    """Reduce trial results to counts; the order of results does not matter."""
    tally = Counter("Success" if r.success else r.reason for r in results)
    success_count = tally.pop("Success", 0)
    return BatchSummary(
        name=name,
        total=success_count + sum(tally.values()),
        success_count=success_count,
        failures=dict(tally),
        labels=dict(labels or {}),
    )


def _run_trial(batch: BatchSpec, index: int) -> MissionResult:
    trial_seed = derive_seed(batch.seed, index)
    script = batch.factory(trial_seed, np.random.default_rng(trial_seed))
    _, result = run_mission(script, batch.config)
    return result


def monte_carlo(batch: BatchSpec, workers: int = 1) -> BatchSummary:
    """
    Run every trial of a batch and summarize the outcomes.

    Args:
        batch: Template, trial count, master seed and configuration
        workers: Thread count; trials are independent so any count gives
            the same summary

    Returns:
        BatchSummary whose counts sum to the trial count
    """
    logger = logging.getLogger(__name__)
    logger.info(f"Running batch '{batch.name}' with {batch.trials} trials (seed {batch.seed})")

    results: List[MissionResult] = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_trial(batch, i), range(batch.trials)))
    else:
        for i in range(batch.trials):
            results.append(_run_trial(batch, i))
            if (i + 1) % 100 == 0 or i + 1 == batch.trials:
                logger.info(f"Progress: {i + 1}/{batch.trials} trials processed")

    summary = summarize(batch.name, results, batch.labels)
    logger.info(
        f"Batch '{batch.name}': {summary.success_count}/{summary.total} successes "
        f"({summary.fraction:.1%})"
    )
    return summary


def _uniform_offset(rng: np.random.Generator, offset_range: float) -> float:
    return float(rng.uniform(-offset_range, offset_range)) if offset_range > 0 else 0.0


def landing_batch(
    base: BaseConfig,
    incline_deg: float,
    trials: int,
    seed: int = 0,
    config: Optional[SimulationConfig] = None,
    controller: ControllerKind = ControllerKind.FFP,
) -> BatchSpec:
    """Repeated landings of one base on a platform."""
    config = (config or SimulationConfig()).with_base(base)

    def factory(trial_seed: int, rng: np.random.Generator) -> MissionScript:
        return landing_script(incline_deg, controller, trial_seed, config.bands)

    return BatchSpec(
        name="landing-tilt" if incline_deg > 0 else "landing-ground",
        factory=factory,
        trials=trials,
        seed=seed,
        config=config,
        labels={"base": base.value, "incline_deg": f"{incline_deg:g}"},
    )


def grasp_batch(
    fixture: ObjectFixture,
    base: BaseConfig,
    trials: int,
    seed: int = 0,
    config: Optional[SimulationConfig] = None,
    controller: ControllerKind = ControllerKind.FFP,
    aerial: bool = False,
) -> BatchSpec:
    """Repeated grasps of one object with a random lateral placement error."""
    config = (config or SimulationConfig()).with_base(base)
    mission = config.mission
    build = aerial_grasp_script if aerial else static_grasp_script

    def factory(trial_seed: int, rng: np.random.Generator) -> MissionScript:
        offset = _uniform_offset(rng, mission.offset_range_mm)
        return build(
            fixture.spec,
            controller=controller,
            seed=trial_seed,
            offset_mm=offset,
            hold_s=mission.hold_s,
            bands=config.bands,
        )

    return BatchSpec(
        name="aerial-grasp" if aerial else "grasp-matrix",
        factory=factory,
        trials=trials,
        seed=seed,
        config=config,
        labels={"base": base.value, "object": fixture.spec.name},
    )


def run_grasp_matrix(
    fixtures: Dict[str, ObjectFixture],
    trials: int,
    seed: int = 0,
    config: Optional[SimulationConfig] = None,
    bases: Iterable[BaseConfig] = (BaseConfig.X_BASE, BaseConfig.H_BASE),
    controller: ControllerKind = ControllerKind.FFP,
    workers: int = 1,
) -> List[BatchSummary]:
    """Static grasp success for every (base, test-set object) pair."""
    summaries = []
    for base in bases:
        for name, fixture in sorted(fixtures.items()):
            if not fixture.in_test_set:
                continue
            # Distinct master seed per cell, still reproducible from the one seed.
            cell_seed = derive_seed(seed, hash_label(f"{base.value}:{name}"))
            batch = grasp_batch(fixture, base, trials, cell_seed, config, controller)
            summaries.append(monte_carlo(batch, workers))
    return summaries


def hash_label(label: str) -> int:
    """Stable non-negative integer for a text label."""
    return int.from_bytes(label.encode("utf-8"), "big") % (2**63)
