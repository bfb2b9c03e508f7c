import math
import os
import sys
from unittest import mock

modules_path = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(modules_path, 'src'))

from unittest import TestCase

import numpy as np
from scipy import special

from beamlink import rf
from beamlink.constants import C, Tracking
from beamlink.exceptions import ContractViolation, ValidationError
from beamlink.orbits import LUNAR_SOUTH_POLE, MALAPERT, MOON, site_position
from beamlink.rf import DishAntenna, RfLink, boresight_gain, dish_gain, far_field_distance, friis_received, \
    harvested_rf, link_far_field_distance, off_boresight, pattern_factor, rf_sample
from beamlink.util import to_db

LINK = RfLink()


class TestRecords(TestCase):
    def test_defaults(self):
        self.assertEqual(LINK.transmitter.diameter, 4.0)
        self.assertEqual(LINK.receiver.diameter, 50.0)
        self.assertEqual(LINK.transmitter.tracking, Tracking.FULL)
        self.assertFalse(LINK.power_split)
        self.assertAlmostEqual(LINK.lambda_r * LINK.frequency, C)

    def test_validation(self):
        with self.assertRaises(ValidationError) as cm:
            RfLink(frequency=0.0)
        self.assertEqual(cm.exception.field, 'frequency')
        with self.assertRaises(ValidationError) as cm:
            DishAntenna(tracking='bogus')
        self.assertEqual(cm.exception.field, 'tracking')
        self.assertEqual(DishAntenna(tracking='fixed').tracking, Tracking.FIXED)


class TestDishGain(TestCase):
    def test_boresight_gains(self):
        self.assertAlmostEqual(to_db(boresight_gain(LINK.receiver, LINK.lambda_r)), 61.89, delta=0.01)
        self.assertAlmostEqual(to_db(boresight_gain(LINK.transmitter, LINK.lambda_r)), 39.95, delta=0.01)

    def test_gain_at_zero_angle(self):
        self.assertEqual(dish_gain(LINK.receiver, LINK.lambda_r, 0.0),
                         boresight_gain(LINK.receiver, LINK.lambda_r))

    def test_first_null(self):
        dish = LINK.transmitter
        zeta = special.jn_zeros(1, 1)[0]
        phi = math.asin(zeta * LINK.lambda_r / (math.pi * dish.diameter))
        self.assertLess(dish_gain(dish, LINK.lambda_r, phi), 1e-20 * boresight_gain(dish, LINK.lambda_r))

    def test_pattern_bounded(self):
        for zeta in np.linspace(0.0, 50.0, 1001):
            value = pattern_factor(zeta)
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, 1.0 + 1e-15)

    def test_pattern_series_continuity(self):
        zeta = 1e-4
        z2 = zeta * zeta
        series = (1.0 - z2 / 8.0 + z2 * z2 / 192.0) ** 2
        self.assertAlmostEqual(pattern_factor(zeta), series, places=12)
        self.assertAlmostEqual(pattern_factor(0.99999e-4), pattern_factor(zeta), places=12)

    def test_angle_out_of_range(self):
        with self.assertRaises(ContractViolation):
            dish_gain(LINK.transmitter, LINK.lambda_r, -0.1)
        with self.assertRaises(ContractViolation):
            dish_gain(LINK.transmitter, LINK.lambda_r, 2.0)

    def test_far_field(self):
        self.assertAlmostEqual(far_field_distance(LINK.receiver, LINK.lambda_r), 41.7e3, delta=100.0)
        self.assertEqual(link_far_field_distance(LINK), far_field_distance(LINK.receiver, LINK.lambda_r))


class TestFriis(TestCase):
    def test_isotropic(self):
        d = 100e3
        expected = 0.8 * (LINK.lambda_r / (4.0 * math.pi * d)) ** 2
        self.assertAlmostEqual(friis_received(LINK, 1.0, d, 1.0, 1.0) / expected, 1.0, places=14)

    def test_inverse_square(self):
        near = friis_received(LINK, 1e5, 100e3, 9883.0, 1.5e6)
        far = friis_received(LINK, 1e5, 200e3, 9883.0, 1.5e6)
        self.assertAlmostEqual(near / far, 4.0, places=12)

    def test_linear_in_power_and_gains(self):
        base = friis_received(LINK, 1e5, 100e3, 10.0, 20.0)
        self.assertAlmostEqual(friis_received(LINK, 3e5, 100e3, 10.0, 20.0) / base, 3.0, places=12)
        self.assertAlmostEqual(friis_received(LINK, 1e5, 100e3, 50.0, 20.0) / base, 5.0, places=12)
        self.assertAlmostEqual(friis_received(LINK, 1e5, 100e3, 10.0, 40.0) / base, 2.0, places=12)

    def test_reference_hop(self):
        sample = rf_sample(LINK, 0.0, 331.94e3, 121.34e3)
        self.assertLess(abs(sample.P_R - 25.0) / 25.0, 0.01)
        self.assertLess(abs(sample.P_H - 19.80) / 19.80, 0.025)

    def test_invalid(self):
        with self.assertRaises(ContractViolation):
            friis_received(LINK, 1.0, 0.0, 1.0, 1.0)
        with self.assertRaises(ContractViolation):
            friis_received(LINK, -1.0, 1e3, 1.0, 1.0)

    def test_harvest(self):
        self.assertAlmostEqual(harvested_rf(LINK, 25.05), 20.04, places=9)
        self.assertAlmostEqual(harvested_rf(LINK, 0.6613), 0.52904, places=9)
        with self.assertRaises(ContractViolation):
            harvested_rf(LINK, -1.0)

    def test_near_field_warning(self):
        with mock.patch.object(rf.logger, 'warning') as warning:
            rf_sample(LINK, 0.0, 1e5, 10e3)
            self.assertTrue(warning.called)
        with mock.patch.object(rf.logger, 'warning') as warning:
            rf_sample(LINK, 0.0, 1e5, 121.34e3)
            self.assertFalse(warning.called)


class TestOffBoresight(TestCase):
    def test_same_target(self):
        self.assertEqual(off_boresight((0, 0, 0), (1, 2, 3), (1, 2, 3)), 0.0)

    def test_orthogonal(self):
        self.assertAlmostEqual(off_boresight((0, 0, 0), (1, 0, 0), (0, 5, 0)), math.pi / 2, places=12)

    def test_satellite_over_pole(self):
        sat = (0.0, 0.0, -1837.4)
        lsp = site_position(LUNAR_SOUTH_POLE, MOON, 0.0)
        malapert = site_position(MALAPERT, MOON, 0.0)
        to_malapert = malapert - np.array(sat)
        expected = math.atan2(math.hypot(to_malapert[0], to_malapert[1]), to_malapert[2])
        self.assertAlmostEqual(off_boresight(sat, lsp, malapert), expected, places=9)

    def test_reciprocal(self):
        sat = (100.0, -20.0, -1900.0)
        a = (0.0, 0.0, -1737.4)
        b = (121.5, 0.0, -1737.9)
        self.assertAlmostEqual(off_boresight(sat, a, b), off_boresight(sat, b, a), places=15)

    def test_degenerate(self):
        with self.assertRaises(ContractViolation):
            off_boresight((1, 1, 1), (1, 1, 1), (0, 0, 0))
