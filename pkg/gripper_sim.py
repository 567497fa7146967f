#!/usr/bin/env python3
"""
Soft-gripper simulation command line.

Runs the closed-loop pneumatic gripper through the bench and flight
experiments and writes plot-ready CSV traces and summary tables:
1. step-response: FF-P vs P-only pressure regulation
2. mission: one scripted flight (aerial grasp, payload, landing) or a custom script
3. batch: seeded Monte Carlo success statistics

Usage:
    python gripper_sim.py step-response [--controller ffp|p] [--profile PROFILE]
    python gripper_sim.py mission --preset aerial-grasp [--object NAME]
    python gripper_sim.py batch --preset landing-tilt --trials 1000
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.config import ConfigError, RunConfig, load_run_config
from src.control import ControllerKind
from src.grasp import BaseConfig, ObjectFixture, load_object_set
from src.mission import (
    BatchSummary,
    MissionResult,
    MissionScript,
    ResultOrganizer,
    ScriptValidationError,
    grasp_batch,
    landing_batch,
    load_mission_script_file,
    monte_carlo,
    run_grasp_matrix,
    run_mission,
    step_response_experiment,
)
from src.mission.presets import (
    BATCH_PRESETS,
    MISSION_PRESETS,
    PRESET_OBJECTS,
    STEP_PROFILES,
    aerial_grasp_script,
    landing_incline,
    landing_script,
    payload_script,
    step_profile,
)
from src.mission.result_organizer import metrics_rows

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

# Base used by a preset when --base is not given.
PRESET_BASES: Dict[str, BaseConfig] = {
    "aerial-grasp": BaseConfig.H_BASE,
    "payload": BaseConfig.X_BASE,
    "landing-ground": BaseConfig.X_BASE,
    "landing-tilt": BaseConfig.X_BASE,
}


def setup_logging(verbose: bool = False):
    """Setup logging configuration."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%H:%M:%S",
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per experiment kind."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (e.g. config/gripper_config.json)")
    common.add_argument("--seed", type=int, help="Master seed for every random stream")
    common.add_argument("--out", help="Output directory for CSV and JSON results")
    common.add_argument(
        "--controller",
        choices=["ffp", "p"],
        help="Control law (step-response compares both when unset)",
    )
    common.add_argument("--base", choices=["x", "h"], help="Gripper base configuration")
    common.add_argument("--workers", type=int, help="Threads for Monte Carlo trials")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")

    parser = argparse.ArgumentParser(
        description="Simulate a pneumatic soft gripper on a small aerial vehicle",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # FF-P vs P-only step response, two traces and a metrics table
  python gripper_sim.py step-response

  # Deflation only, FF-P only
  python gripper_sim.py step-response --controller ffp --profile deflate-only

  # Aerial grasp of the 75 g bottle
  python gripper_sim.py mission --preset aerial-grasp

  # Landing on the 10 degree platform, 1000 trials per base
  python gripper_sim.py batch --preset landing-tilt --trials 1000 --seed 7

Environment overrides: GRIPPER_SIM__<SECTION>__<KEY>=value
  e.g. GRIPPER_SIM__PLANT__K_LEAK_PER_S=0.02
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    step = subparsers.add_parser(
        "step-response", parents=[common], help="Compare FF-P and P-only step responses"
    )
    step.add_argument("--profile", choices=list(STEP_PROFILES), help="Setpoint profile")
    step.set_defaults(handler=cmd_step_response)

    mission = subparsers.add_parser("mission", parents=[common], help="Run one mission")
    mission.add_argument("--preset", choices=list(MISSION_PRESETS), help="Mission preset")
    mission.add_argument("--script", help="Custom mission script (JSON)")
    mission.add_argument("--object", help="Object name from the object set")
    mission.add_argument("--incline", type=float, help="Landing platform incline in degrees")
    mission.set_defaults(handler=cmd_mission)

    batch = subparsers.add_parser("batch", parents=[common], help="Run a Monte Carlo batch")
    batch.add_argument("--preset", choices=list(BATCH_PRESETS), help="Batch preset")
    batch.add_argument("--trials", type=int, help="Trials per batch row")
    batch.add_argument("--object", help="Object name from the object set")
    batch.add_argument("--incline", type=float, help="Landing platform incline in degrees")
    batch.set_defaults(handler=cmd_batch)

    return parser


def flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Run-section overrides for every flag given on the command line."""
    mapping = {
        "seed": "seed",
        "out": "out_dir",
        "controller": "controller",
        "base": "base",
        "workers": "workers",
        "profile": "profile",
        "preset": "preset",
        "trials": "trials",
        "incline": "incline_deg",
    }
    run = {}
    for flag, key in mapping.items():
        value = getattr(args, flag, None)
        if value is not None:
            run[key] = value
    return {"run": run} if run else {}


def load_config(args: argparse.Namespace) -> RunConfig:
    return load_run_config(args.config, flag_overrides(args))


def print_table(title: str, frame: pd.DataFrame):
    """Print a summary table."""
    print("\n" + "=" * 60)
    print(title)
    print("=" * 60)
    if frame.empty:
        print("(no rows)")
    else:
        print(frame.to_string(index=False))
    print("=" * 60)


def print_mission_result(script: MissionScript, base: BaseConfig, result: MissionResult):
    """Print a mission outcome in a nice format."""
    print("\n" + "=" * 60)
    print("MISSION RESULT")
    print("=" * 60)
    print(f"Mission: {script.name}")
    print(f"Controller: {script.controller.value}")
    print(f"Base: {base.value}")
    print(f"Seed: {script.seed}")
    print()
    print(f"OUTCOME: {result.outcome}")
    metrics = result.metrics
    if metrics.rise_time_s is not None:
        print(f"   Rise time: {metrics.rise_time_s:.2f} s")
    if metrics.settle_time_s is not None:
        print(f"   Settle time: {metrics.settle_time_s:.2f} s")
    print(f"   Steady-state error: {metrics.steady_state_error_kPa:.2f} kPa")
    print(f"   Hold satisfied: {'Yes' if metrics.hold_satisfied else 'No'}")
    print("=" * 60)


def _fixture(fixtures: Dict[str, ObjectFixture], name: str) -> ObjectFixture:
    if name not in fixtures:
        raise ConfigError(f"Unknown object '{name}' (available: {', '.join(sorted(fixtures))})")
    return fixtures[name]


def _bases(config: RunConfig) -> List[BaseConfig]:
    return [config.base] if config.base else [BaseConfig.X_BASE, BaseConfig.H_BASE]


def cmd_step_response(args: argparse.Namespace) -> int:
    """Run the step-response comparison and write traces plus metrics."""
    logger = logging.getLogger(__name__)
    config = load_config(args)
    sim = config.to_simulation_config()
    sequence, duration = step_profile(config.run.profile, sim.controller)
    kinds = (
        [ControllerKind(config.run.controller)]
        if config.run.controller
        else [ControllerKind.FFP, ControllerKind.P_ONLY]
    )

    organizer = ResultOrganizer(config.run.out_dir)
    rows = []
    for kind in kinds:
        logger.info(f"Step response ({config.run.profile}) with {kind.value} controller")
        trace, metrics = step_response_experiment(kind, sequence, sim, duration, config.run.seed)
        organizer.save_trace(f"step_response_{kind.value}", trace)
        rows.extend(metrics_rows(kind.value, metrics))
    organizer.save_segment_metrics("step_response_metrics", rows)

    print_table(f"STEP RESPONSE METRICS ({config.run.profile})", pd.DataFrame(rows))
    return EXIT_OK


def build_mission_preset(
    preset: str, config: RunConfig, fixtures: Dict[str, ObjectFixture], object_name: Optional[str]
) -> Tuple[MissionScript, BaseConfig]:
    """Mission script and base for a named preset."""
    sim = config.to_simulation_config()
    kind = config.controller_kind
    seed = config.run.seed
    base = config.base or PRESET_BASES[preset]

    if preset == "aerial-grasp":
        fixture = _fixture(fixtures, object_name or PRESET_OBJECTS[preset])
        script = aerial_grasp_script(
            fixture.spec, kind, seed, hold_s=sim.mission.hold_s, bands=sim.bands
        )
    elif preset == "payload":
        fixture = _fixture(fixtures, object_name or PRESET_OBJECTS[preset])
        script = payload_script(fixture.spec, kind, seed, hold_s=sim.mission.hold_s, bands=sim.bands)
    elif preset in ("landing-ground", "landing-tilt"):
        incline = landing_incline(preset, config.run.incline_deg)
        script = landing_script(incline, kind, seed, sim.bands)
    else:
        raise ConfigError(f"Unknown mission preset: {preset}")
    return script, base


def cmd_mission(args: argparse.Namespace) -> int:
    """Run one mission, write its trace and result, exit with its outcome."""
    logger = logging.getLogger(__name__)
    config = load_config(args)
    fixtures = load_object_set(config.mission.object_set)

    if args.script:
        controller = config.controller_kind if config.run.controller else None
        # Only an explicit --seed replaces the seed written in the script.
        script = load_mission_script_file(args.script, fixtures, controller, args.seed)
        base = config.base or BaseConfig.H_BASE
    elif config.run.preset:
        if config.run.preset not in MISSION_PRESETS:
            raise ConfigError(
                f"Unknown mission preset: {config.run.preset} "
                f"(available: {', '.join(MISSION_PRESETS)})"
            )
        script, base = build_mission_preset(config.run.preset, config, fixtures, args.object)
    else:
        raise ConfigError("mission needs --preset or --script")

    logger.info(f"Running mission '{script.name}' on the {base.value}-base")
    trace, result = run_mission(script, config.to_simulation_config().with_base(base))

    organizer = ResultOrganizer(config.run.out_dir)
    organizer.save_trace(f"mission_{script.name}", trace)
    organizer.save_mission_result(f"mission_{script.name}", result)

    print_mission_result(script, base, result)
    if not result.success:
        logger.error(f"Mission '{script.name}' failed: {result.reason}")
        return EXIT_FAILURE
    return EXIT_OK


def run_batch_preset(
    preset: str, config: RunConfig, fixtures: Dict[str, ObjectFixture], object_name: Optional[str]
) -> List[BatchSummary]:
    """Summaries of every batch row a preset defines."""
    sim = config.to_simulation_config()
    run = config.run
    kind = config.controller_kind

    if preset in ("landing-ground", "landing-tilt"):
        incline = landing_incline(preset, run.incline_deg)
        return [
            monte_carlo(landing_batch(base, incline, run.trials, run.seed, sim, kind), run.workers)
            for base in _bases(config)
        ]
    elif preset == "aerial-grasp":
        fixture = _fixture(fixtures, object_name or PRESET_OBJECTS[preset])
        return [
            monte_carlo(
                grasp_batch(fixture, base, run.trials, run.seed, sim, kind, aerial=True),
                run.workers,
            )
            for base in _bases(config)
        ]
    elif preset == "grasp-matrix":
        if object_name:
            fixture = _fixture(fixtures, object_name)
            return [
                monte_carlo(grasp_batch(fixture, base, run.trials, run.seed, sim, kind), run.workers)
                for base in _bases(config)
            ]
        return run_grasp_matrix(
            fixtures, run.trials, run.seed, sim, _bases(config), kind, run.workers
        )
    else:
        raise ConfigError(f"Unknown batch preset: {preset} (available: {', '.join(BATCH_PRESETS)})")


def cmd_batch(args: argparse.Namespace) -> int:
    """Run a Monte Carlo preset and write its summary table."""
    config = load_config(args)
    if not config.run.preset:
        raise ConfigError("batch needs --preset")
    fixtures = load_object_set(config.mission.object_set)

    summaries = run_batch_preset(config.run.preset, config, fixtures, args.object)

    organizer = ResultOrganizer(config.run.out_dir)
    organizer.save_batch_summaries(f"batch_{config.run.preset}", summaries)
    print_table(
        f"BATCH SUMMARY: {config.run.preset} (seed {config.run.seed})",
        pd.DataFrame([s.to_dict() for s in summaries]),
    )
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main script entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(args.verbose)
    logger = logging.getLogger(__name__)

    try:
        return args.handler(args)
    except (ConfigError, ScriptValidationError) as e:
        logger.error(f"Configuration error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except KeyboardInterrupt:
        logger.info("Simulation interrupted by user")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Error during simulation: {e}")
        if args.verbose:
            logger.exception("Full traceback:")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
