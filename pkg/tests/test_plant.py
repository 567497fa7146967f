"""Tests for the pneumatic plant and pressure sensor."""

import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from src.command.airflow import AirflowState, transition
from src.control.ffp_controller import ControllerMode
from src.plant.pneumatic_plant import (
    InvalidGeometryError,
    PlantParams,
    PlantState,
    analytic_rise,
    calibrate_k_pump,
    plant_step,
)
from src.plant.sensor import SensorModel, read_sensor

INFLATE = AirflowState(valve_inflate=True, pump_on=True, command=ControllerMode.INFLATION)
DEFLATE = AirflowState(valve_deflate=True, pump_on=True, command=ControllerMode.DEFLATION)
SEALED = AirflowState()


def run_constant(y0: float, airflow: AirflowState, duty: float, seconds: float, params: PlantParams):
    state = PlantState(y0)
    for _ in range(int(round(seconds / params.dt))):
        state = plant_step(state, airflow, duty, params)
    return state.y


class TestCalibration(unittest.TestCase):
    """Test k_pump calibration."""

    def test_rise_anchor(self):
        """Test the -25 to 85 kPa in 5 s anchor."""
        k = calibrate_k_pump(5, -25, 85, 120)
        self.assertAlmostEqual(k, math.log(145 / 35) / 5, places=12)
        self.assertAlmostEqual(k, 0.2843, places=4)

    def test_zero_rise(self):
        """Test no pressure change needs no pump rate."""
        self.assertEqual(calibrate_k_pump(5, -25, -25, 120), 0.0)

    def test_target_beyond_source(self):
        """Test targets past the pump limit are rejected."""
        with self.assertRaises(InvalidGeometryError):
            calibrate_k_pump(5, -25, 130, 120)
        with self.assertRaises(InvalidGeometryError):
            calibrate_k_pump(5, -25, 120, 120)

    def test_target_behind_start(self):
        """Test targets on the wrong side of the start are rejected."""
        with self.assertRaises(InvalidGeometryError):
            calibrate_k_pump(5, 0, -10, 120)

    def test_deflation_direction(self):
        """Test calibration towards a negative source pressure."""
        k = calibrate_k_pump(4, 0, -25, -60)
        self.assertAlmostEqual(k, math.log(60 / 35) / 4, places=12)

    def test_invalid_inputs(self):
        """Test non-positive rise time and degenerate start."""
        with self.assertRaises(InvalidGeometryError):
            calibrate_k_pump(0, -25, 85, 120)
        with self.assertRaises(InvalidGeometryError):
            calibrate_k_pump(5, 120, 100, 120)

    def test_from_rise_anchor(self):
        """Test params built from the rise anchor."""
        params = PlantParams.from_rise_anchor(k_leak=0.0)
        self.assertAlmostEqual(params.k_pump, math.log(145 / 35) / 5, places=12)
        self.assertEqual(params.k_leak, 0.0)
        self.assertEqual(params.p_pump_in, 120.0)

    def test_params_validation(self):
        """Test PlantParams rejects invalid values."""
        for overrides in (
            {"p_pump_out": 10.0},
            {"p_pump_in": -5.0},
            {"k_pump": 0.0},
            {"k_leak": -0.1},
            {"dt": 0.0},
            {"dt": 0.2},
        ):
            with self.subTest(overrides=overrides):
                with self.assertRaises(ValueError):
                    PlantParams(**overrides)


class TestPlantStep(unittest.TestCase):
    """Test the Euler plant update."""

    def setUp(self):
        """Set up test fixtures."""
        self.params = PlantParams()
        self.no_leak = PlantParams(k_pump=calibrate_k_pump(5, -25, 85, 120), k_leak=0.0)

    def test_ambient_fixed_point(self):
        """Test sealed chamber at ambient stays there."""
        state = PlantState(0.0)
        for duty in (0.0, 50.0, 100.0):
            self.assertEqual(plant_step(state, SEALED, duty, self.params).y, 0.0)

    def test_five_second_rise(self):
        """Test full-duty inflation from -25 reaches about 85 kPa in 5 s."""
        y = run_constant(-25.0, INFLATE, 100.0, 5.0, self.no_leak)
        self.assertAlmostEqual(y, 85.0, delta=0.5)
        self.assertAlmostEqual(
            y, analytic_rise(-25.0, 120.0, self.no_leak.k_pump, 5.0), delta=0.5
        )

    def test_dt_halving_converges(self):
        """Test halving dt moves the 5 s endpoint by less than 0.5 kPa."""
        coarse = run_constant(-25.0, INFLATE, 100.0, 5.0, self.no_leak)
        fine_params = PlantParams(k_pump=self.no_leak.k_pump, k_leak=0.0, dt=0.005)
        fine = run_constant(-25.0, INFLATE, 100.0, 5.0, fine_params)
        self.assertLess(abs(coarse - fine), 0.5)

    def test_leak_decay(self):
        """Test |y| strictly decreases with valves closed."""
        for y0 in (85.0, -25.0):
            with self.subTest(y0=y0):
                state = PlantState(y0)
                for _ in range(500):
                    nxt = plant_step(state, SEALED, 0.0, self.params)
                    self.assertLess(abs(nxt.y), abs(state.y))
                    state = nxt

    def test_monotone_approach(self):
        """Test constant actuation approaches the pump limit monotonically."""
        for airflow, limit in ((INFLATE, 120.0), (DEFLATE, -60.0)):
            with self.subTest(limit=limit):
                state = PlantState(0.0)
                distances = []
                for _ in range(3000):
                    state = plant_step(state, airflow, 70.0, self.no_leak)
                    distances.append(abs(limit - state.y))
                self.assertTrue(all(b <= a for a, b in zip(distances, distances[1:])))

    def test_deflation_reduces_pressure(self):
        """Test the deflation valve pulls towards the vacuum limit."""
        y = run_constant(0.0, DEFLATE, 100.0, 2.0, self.params)
        self.assertLess(y, -20.0)

    def _fuzz_bounds(self, params: PlantParams, steps: int, seed: int):
        rng = np.random.default_rng(seed)
        modes = list(ControllerMode)
        commands = rng.integers(0, len(modes), size=steps)
        duties = rng.uniform(0.0, 100.0, size=steps)
        low, high = params.p_pump_out, params.p_pump_in
        state = PlantState(0.0)
        airflow = AirflowState()
        for c, duty in zip(commands, duties):
            airflow = transition(airflow, modes[c], float(duty))
            state = plant_step(state, airflow, float(duty), params)
            if not low <= state.y <= high:
                self.fail(f"Pressure {state.y} left [{low}, {high}]")

    def test_bounds_fuzz(self):
        """Test 10^5 randomly commanded steps keep pressure inside the pump limits."""
        self._fuzz_bounds(self.params, 100_000, seed=2024)

    def test_bounds_fuzz_aggressive(self):
        """Test the clamp holds for a fast pump and large time step."""
        self._fuzz_bounds(PlantParams(k_pump=9.0, k_leak=0.5, dt=0.1), 20_000, seed=7)

    @given(
        y0=st.floats(min_value=-60.0, max_value=120.0),
        duty=st.floats(min_value=0.0, max_value=100.0),
        inflate=st.booleans(),
    )
    @settings(deadline=None)
    def test_single_step_bounded(self, y0, duty, inflate):
        """Test one step from any valid state stays in bounds."""
        airflow = INFLATE if inflate else DEFLATE
        y = plant_step(PlantState(y0), airflow, duty, self.params).y
        self.assertGreaterEqual(y, -60.0)
        self.assertLessEqual(y, 120.0)


class TestSensor(unittest.TestCase):
    """Test the pressure sensor."""

    def test_zero_noise_passthrough(self):
        """Test readings equal the chamber pressure without noise."""
        rng = np.random.default_rng(0)
        self.assertEqual(read_sensor(PlantState(85.0), SensorModel(), rng), 85.0)

    def test_clamp(self):
        """Test readings clamp to the sensor range."""
        rng = np.random.default_rng(0)
        sensor = SensorModel(range_high=50.0)
        self.assertEqual(read_sensor(PlantState(85.0), sensor, rng), 50.0)

    def test_noise_reproducible(self):
        """Test noisy readings are reproducible for a fixed seed."""
        sensor = SensorModel(noise_sd=1.0)
        first = [read_sensor(PlantState(85.0), sensor, np.random.default_rng(7)) for _ in range(3)]
        rng = np.random.default_rng(7)
        second = read_sensor(PlantState(85.0), sensor, rng)
        self.assertEqual(first[0], second)
        self.assertEqual(len(set(first)), 1)
        for value in first:
            self.assertLess(abs(value - 85.0), 5.0)

    def test_noise_stream_advances(self):
        """Test consecutive noisy readings differ."""
        rng = np.random.default_rng(11)
        sensor = SensorModel(noise_sd=1.0)
        readings = [read_sensor(PlantState(85.0), sensor, rng) for _ in range(20)]
        self.assertGreater(len(set(readings)), 1)
        self.assertTrue(all(abs(r - 85.0) < 5.0 for r in readings))

    def test_invalid_sensor(self):
        """Test SensorModel validation."""
        with self.assertRaises(ValueError):
            SensorModel(range_low=10.0, range_high=0.0)
        with self.assertRaises(ValueError):
            SensorModel(noise_sd=-1.0)


if __name__ == "__main__":
    unittest.main()
