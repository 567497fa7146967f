"""Tests for the feed-forward proportional controller."""

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from src.control.ffp_controller import (
    ControllerKind,
    ControllerMode,
    ControllerModeError,
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

ACTIVE_MODES = [ControllerMode.INFLATION, ControllerMode.DEFLATION]

valid_params = st.builds(
    ControllerParams,
    r_inflate=st.floats(min_value=1.0, max_value=120.0),
    r_deflate=st.floats(min_value=-60.0, max_value=-1.0),
    p_max=st.just(100.0),
    p_min_inflate=st.floats(min_value=1.0, max_value=99.0),
    p_min_deflate=st.floats(min_value=1.0, max_value=99.0),
    f_in=st.floats(min_value=0.0, max_value=2.0),
    hold_band=st.floats(min_value=0.1, max_value=5.0),
)


class TestControllerParams(unittest.TestCase):
    """Test parameter validation."""

    def test_defaults(self):
        """Test the regulation defaults."""
        params = ControllerParams()
        self.assertEqual(params.r_inflate, 85.0)
        self.assertEqual(params.r_deflate, -25.0)
        self.assertEqual(params.p_min(ControllerMode.INFLATION), 86.0)
        self.assertEqual(params.p_min(ControllerMode.DEFLATION), 63.0)

    def test_invalid_params_rejected(self):
        """Test each invariant violation raises ValueError."""
        cases = [
            {"p_min_inflate": 0.0},
            {"p_min_inflate": 100.0},
            {"p_min_deflate": 120.0},
            {"r_inflate": 0.0},
            {"r_deflate": 5.0},
            {"hold_band": 0.0},
        ]
        for overrides in cases:
            with self.subTest(overrides=overrides):
                with self.assertRaises(ValueError):
                    ControllerParams(**overrides)


class TestControlTerms(unittest.TestCase):
    """Test error, gain and feed-forward terms."""

    def setUp(self):
        """Set up test fixtures."""
        self.params = ControllerParams()

    def test_error(self):
        """Test e = r - y."""
        self.assertEqual(error(85, 85), 0)
        self.assertEqual(error(85, 0), 85)
        self.assertEqual(error(-25, 85), -110)

    def test_setpoint(self):
        """Test the mode-matching setpoint."""
        self.assertEqual(setpoint(self.params, ControllerMode.INFLATION), 85.0)
        self.assertEqual(setpoint(self.params, ControllerMode.DEFLATION), -25.0)
        with self.assertRaises(ControllerModeError):
            setpoint(self.params, ControllerMode.REST)

    def test_proportional_gain(self):
        """Test signed gains for both modes."""
        self.assertAlmostEqual(
            proportional_gain(self.params, ControllerMode.INFLATION), 14 / 85, places=12
        )
        self.assertAlmostEqual(
            proportional_gain(self.params, ControllerMode.DEFLATION), -1.48, places=12
        )

    def test_proportional_gain_rest_rejected(self):
        """Test the gain is undefined at rest."""
        with self.assertRaises(ControllerModeError):
            proportional_gain(self.params, ControllerMode.REST)

    def test_feed_forward(self):
        """Test feed-forward coefficients."""
        self.assertEqual(feed_forward(self.params, ControllerMode.INFLATION), 0.8)
        self.assertAlmostEqual(feed_forward(self.params, ControllerMode.DEFLATION), -0.04)
        deep = ControllerParams(r_deflate=-50.0)
        self.assertAlmostEqual(feed_forward(deep, ControllerMode.DEFLATION), -0.02)
        with self.assertRaises(ControllerModeError):
            feed_forward(self.params, ControllerMode.REST)

    def test_deflation_signs(self):
        """Test gain and feed-forward are negative while deflating."""
        self.assertLess(proportional_gain(self.params, ControllerMode.DEFLATION), 0)
        self.assertLess(feed_forward(self.params, ControllerMode.DEFLATION), 0)


class TestFfpOutput(unittest.TestCase):
    """Test the feed-forward proportional law."""

    def setUp(self):
        """Set up test fixtures."""
        self.params = ControllerParams()

    def test_inflation_from_zero(self):
        """Test full duty when inflating from ambient."""
        out = ffp_output(self.params, ControllerMode.INFLATION, 0.0)
        self.assertAlmostEqual(out.u, 100.0, places=9)
        self.assertAlmostEqual(out.g, 100.0, places=9)
        self.assertAlmostEqual(out.duty, 100.0, places=9)
        self.assertFalse(out.holding)

    def test_inflation_saturates_at_closing_pressure(self):
        """Test the feed-forward term pushes g beyond p_max at 58 kPa."""
        out = ffp_output(self.params, ControllerMode.INFLATION, 58.0)
        self.assertAlmostEqual(out.u, 90.447, places=2)
        self.assertAlmostEqual(out.g, 136.847, places=2)
        self.assertEqual(out.duty, 100.0)

    def test_deflation_from_zero(self):
        """Test full duty when deflating from ambient."""
        out = ffp_output(self.params, ControllerMode.DEFLATION, 0.0)
        self.assertAlmostEqual(out.u, 100.0, places=9)
        self.assertAlmostEqual(out.g, 100.0, places=9)
        self.assertAlmostEqual(out.duty, 100.0, places=9)

    def test_deflation_setpoint_reached_holds(self):
        """Test the supervisor holds at the deflation setpoint."""
        out = ffp_output(self.params, ControllerMode.DEFLATION, -25.0)
        self.assertEqual(out.e, 0.0)
        self.assertTrue(out.holding)
        self.assertEqual(out.duty, 0.0)

    def test_rest_rejected(self):
        """Test Rest must go through rest_output."""
        with self.assertRaises(ControllerModeError):
            ffp_output(self.params, ControllerMode.REST, 0.0)

    def test_hold_hysteresis(self):
        """Test the latch keeps holding up to twice the band."""
        y = 85.0 - 3.0
        unlatched = ffp_output(self.params, ControllerMode.INFLATION, y, latched=False)
        latched = ffp_output(self.params, ControllerMode.INFLATION, y, latched=True)
        self.assertFalse(unlatched.holding)
        self.assertTrue(latched.holding)
        released = ffp_output(self.params, ControllerMode.INFLATION, 85.0 - 4.5, latched=True)
        self.assertFalse(released.holding)
        self.assertGreater(released.duty, 0.0)

    def test_to_dict(self):
        """Test dictionary conversion."""
        out = ffp_output(self.params, ControllerMode.INFLATION, 10.0)
        data = out.to_dict()
        self.assertEqual(set(data), {"e", "Kp", "u", "g", "duty", "holding"})
        self.assertEqual(data["e"], 75.0)

    @given(params=valid_params, mode=st.sampled_from(ACTIVE_MODES))
    @settings(deadline=None)
    def test_endpoint_identities(self, params, mode):
        """Test u = p_max at y = 0 and u = p_min at y = r."""
        r = setpoint(params, mode)
        at_zero = ffp_output(params, mode, 0.0)
        at_setpoint = ffp_output(params, mode, r)
        self.assertAlmostEqual(at_zero.u, params.p_max, delta=1e-9)
        self.assertAlmostEqual(at_setpoint.u, params.p_min(mode), delta=1e-9)

    def test_endpoint_identities_defaults(self):
        """Test the endpoint identities with the default parameters."""
        for mode in ACTIVE_MODES:
            with self.subTest(mode=mode):
                r = setpoint(self.params, mode)
                self.assertAlmostEqual(ffp_output(self.params, mode, 0.0).u, 100.0, delta=1e-9)
                self.assertAlmostEqual(
                    ffp_output(self.params, mode, r).u, self.params.p_min(mode), delta=1e-9
                )

    @given(
        mode=st.sampled_from(ACTIVE_MODES),
        y=st.floats(min_value=-100.0, max_value=300.0),
        latched=st.booleans(),
    )
    @settings(deadline=None)
    def test_duty_clamped(self, mode, y, latched):
        """Test the applied duty stays in [0, p_max] and is zero while holding."""
        for out in (
            ffp_output(self.params, mode, y, latched),
            p_only_output(self.params, mode, y, latched),
        ):
            self.assertGreaterEqual(out.duty, 0.0)
            self.assertLessEqual(out.duty, self.params.p_max)
            if out.holding:
                self.assertEqual(out.duty, 0.0)
            else:
                self.assertEqual(out.duty, min(max(out.g, 0.0), self.params.p_max))

    @given(y=st.floats(min_value=0.0, max_value=85.0, exclude_min=True, exclude_max=True))
    @settings(deadline=None)
    def test_feed_forward_dominates_during_inflation(self, y):
        """Test FF-P duty is never below P-only duty on the way up."""
        ffp = ffp_output(self.params, ControllerMode.INFLATION, y)
        p_only = p_only_output(self.params, ControllerMode.INFLATION, y)
        self.assertGreaterEqual(ffp.duty, p_only.duty)

    @given(mode=st.sampled_from(ACTIVE_MODES), y=st.floats(min_value=-100.0, max_value=300.0))
    @settings(deadline=None)
    def test_deterministic(self, mode, y):
        """Test identical inputs give identical outputs."""
        self.assertEqual(ffp_output(self.params, mode, y), ffp_output(self.params, mode, y))


class TestPOnlyOutput(unittest.TestCase):
    """Test the proportional-only baseline."""

    def setUp(self):
        """Set up test fixtures."""
        self.params = ControllerParams()

    def test_inflation_at_closing_pressure(self):
        """Test g equals u without feed-forward."""
        out = p_only_output(self.params, ControllerMode.INFLATION, 58.0)
        self.assertAlmostEqual(out.g, 90.447, places=2)
        self.assertAlmostEqual(out.duty, 90.447, places=2)
        self.assertEqual(out.g, out.u)

    def test_inflation_from_zero(self):
        """Test full duty at ambient pressure."""
        out = p_only_output(self.params, ControllerMode.INFLATION, 0.0)
        self.assertAlmostEqual(out.duty, 100.0, places=9)

    def test_deflation_setpoint_reached_holds(self):
        """Test the supervisor holds at the deflation setpoint."""
        out = p_only_output(self.params, ControllerMode.DEFLATION, -25.0)
        self.assertTrue(out.holding)
        self.assertEqual(out.duty, 0.0)


class TestRestAndDispatch(unittest.TestCase):
    """Test the rest output and the control-law dispatcher."""

    def test_rest_output(self):
        """Test rest is idle and reported as holding."""
        out = rest_output()
        self.assertEqual(out.duty, 0.0)
        self.assertTrue(out.holding)
        self.assertEqual(out.g, 0.0)

    def test_control_output_dispatch(self):
        """Test each kind selects its law and Rest bypasses both."""
        params = ControllerParams()
        self.assertEqual(
            control_output(ControllerKind.FFP, params, ControllerMode.INFLATION, 58.0),
            ffp_output(params, ControllerMode.INFLATION, 58.0),
        )
        self.assertEqual(
            control_output(ControllerKind.P_ONLY, params, ControllerMode.INFLATION, 58.0),
            p_only_output(params, ControllerMode.INFLATION, 58.0),
        )
        for kind in ControllerKind:
            with self.subTest(kind=kind):
                self.assertEqual(
                    control_output(kind, params, ControllerMode.REST, 40.0), rest_output()
                )

    def test_controller_kind_values(self):
        """Test ControllerKind enum values."""
        self.assertEqual(ControllerKind.FFP.value, "ffp")
        self.assertEqual(ControllerKind.P_ONLY.value, "p")


if __name__ == "__main__":
    unittest.main()
