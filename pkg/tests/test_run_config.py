"""Tests for run configuration loading."""

import json
import os
import tempfile
import unittest

from src.config.run_config import ConfigError, RunConfig, env_overrides, load_run_config
from src.control.ffp_controller import ControllerKind
from src.grasp.schema.object_types import BaseConfig


class TestRunConfig(unittest.TestCase):
    """Test defaults, precedence and diagnostics."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        """Clean up test fixtures."""
        self.temp_dir.cleanup()

    def _write(self, name: str, text: str) -> str:
        path = os.path.join(self.temp_dir.name, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    def test_defaults(self):
        """Test built-in defaults convert to the module parameters."""
        config = load_run_config(environ={})
        sim = config.to_simulation_config()
        self.assertEqual(sim.controller.r_inflate, 85.0)
        self.assertEqual(sim.controller.p_min_deflate, 63.0)
        self.assertEqual(sim.bands.deflate_below, 1300)
        self.assertEqual(sim.plant.k_pump, 0.284)
        self.assertEqual(sim.sensor.range_high, 300.0)
        self.assertEqual(sim.x_base.aperture_open, 180.0)
        self.assertEqual(sim.h_base.pair_gap, 40.0)
        self.assertEqual(sim.grasp.hover_payload_limit, 217.0)
        self.assertEqual(sim.mission.offset_range_mm, 15.0)
        self.assertEqual(sim.base, BaseConfig.H_BASE)
        self.assertIsNone(config.run.controller)
        self.assertEqual(config.controller_kind, ControllerKind.FFP)
        self.assertIsNone(config.base)
        self.assertEqual(config.run.trials, 10)

    def test_shipped_config_matches_defaults(self):
        """Test the shipped config file equals the built-in defaults."""
        self.assertEqual(
            load_run_config("config/gripper_config.json", environ={}),
            load_run_config(environ={}),
        )

    def test_precedence(self):
        """Test file < environment < overrides."""
        path = self._write(
            "config.json",
            json.dumps({"plant": {"k_leak_per_s": 0.02}, "run": {"seed": 1, "trials": 5}}),
        )
        environ = {"GRIPPER_SIM__PLANT__K_LEAK_PER_S": "0.03", "GRIPPER_SIM__RUN__SEED": "2"}
        config = load_run_config(path, overrides={"run": {"seed": 3}}, environ=environ)
        self.assertEqual(config.plant.k_leak_per_s, 0.03)
        self.assertEqual(config.run.seed, 3)
        self.assertEqual(config.run.trials, 5)

    def test_env_overrides_nested(self):
        """Test nested keys and scalar parsing from the environment."""
        overrides = env_overrides(
            {
                "GRIPPER_SIM__GEOMETRY__H_BASE__PAIR_GAP_MM": "35",
                "GRIPPER_SIM__RUN__OUT_DIR": "out/run1",
                "GRIPPER_SIM__RUN__BASE": "x",
                "OTHER_VAR": "ignored",
            }
        )
        self.assertEqual(
            overrides,
            {
                "geometry": {"h_base": {"pair_gap_mm": 35}},
                "run": {"out_dir": "out/run1", "base": "x"},
            },
        )
        config = load_run_config(
            environ={"GRIPPER_SIM__GEOMETRY__H_BASE__PAIR_GAP_MM": "35",
                     "GRIPPER_SIM__RUN__BASE": "x"}
        )
        self.assertEqual(config.to_simulation_config().h_base.pair_gap, 35.0)
        self.assertEqual(config.to_simulation_config().h_base.aperture_open, 145.0)
        self.assertEqual(config.base, BaseConfig.X_BASE)

    def test_unknown_key_line_anchored(self):
        """Test an unknown key reports the file line holding it."""
        path = self._write(
            "config.json",
            '{\n  "plant": {\n    "k_leak_per_s": 0.01,\n    "k_lek": 0.02\n  }\n}\n',
        )
        with self.assertRaises(ConfigError) as ctx:
            load_run_config(path, environ={})
        error = ctx.exception
        self.assertEqual(error.path, path)
        self.assertEqual(error.line, 4)
        self.assertTrue(str(error).startswith(f"{path}:4:"))
        self.assertIn("k_lek", str(error))

    def test_invalid_json_line(self):
        """Test malformed JSON reports the decoder line."""
        path = self._write("config.json", '{\n  "run": {\n    "seed": ,\n  }\n}\n')
        with self.assertRaises(ConfigError) as ctx:
            load_run_config(path, environ={})
        self.assertEqual(ctx.exception.line, 3)

    def test_missing_file(self):
        """Test a missing config file is a config error."""
        with self.assertRaises(ConfigError):
            load_run_config(os.path.join(self.temp_dir.name, "absent.json"), environ={})

    def test_top_level_not_object(self):
        """Test the top level must hold sections."""
        path = self._write("config.json", "[1, 2]")
        with self.assertRaises(ConfigError):
            load_run_config(path, environ={})

    def test_range_violations(self):
        """Test field constraints and module invariants are config errors."""
        cases = [
            {"run": {"trials": 0}},
            {"run": {"seed": -1}},
            {"run": {"controller": "pid"}},
            {"run": {"incline_deg": 50}},
            {"controller": {"p_min_inflate_pct": 120}},
            {"controller": {"r_deflate_kpa": 10}},
            {"command": {"deflate_below_us": 1800}},
            {"plant": {"dt_s": 0.5}},
            {"geometry": {"h_base": {"pair_gap_mm": None}}},
            {"grasp": {"non_static_success": 0}},
        ]
        for overrides in cases:
            with self.subTest(overrides=overrides):
                with self.assertRaises(ConfigError):
                    load_run_config(overrides=overrides, environ={})

    def test_trials_zero_message(self):
        """Test the diagnostic names the offending key."""
        with self.assertRaises(ConfigError) as ctx:
            load_run_config(overrides={"run": {"trials": 0}}, environ={})
        self.assertIn("run.trials", str(ctx.exception))

    def test_config_error_format(self):
        """Test ConfigError string forms."""
        self.assertEqual(str(ConfigError("bad", "c.json", 3)), "c.json:3: bad")
        self.assertEqual(str(ConfigError("bad", "c.json")), "c.json: bad")
        self.assertEqual(str(ConfigError("bad")), "bad")

    def test_model_validate_direct(self):
        """Test RunConfig accepts partial section data."""
        config = RunConfig.model_validate({"sensor": {"noise_sd_kpa": 0.5}})
        self.assertEqual(config.to_simulation_config().sensor.noise_sd, 0.5)


if __name__ == "__main__":
    unittest.main()
