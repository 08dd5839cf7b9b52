import math

import numpy as np
from django.test import SimpleTestCase

from hardening.errors import ConfigError, DimensionError
from hardening.geometry import (
    Angles,
    ArrayGeometry,
    array_response,
    exponent,
    exponent_vector,
    index_maps,
    los_alignment,
    optimal_phase_shifts,
    phase_matrix,
)

WAVELENGTH = 0.1


class ArrayGeometryTests(SimpleTestCase):
    def test_size_and_area(self):
        geom = ArrayGeometry(8, 32, 0.05, 0.04)
        self.assertEqual(geom.size, 256)
        self.assertAlmostEqual(geom.area, 0.002)

    def test_rejects_bad_layouts(self):
        with self.assertRaises(ConfigError):
            ArrayGeometry(0, 4, 0.05, 0.05)
        with self.assertRaises(ConfigError):
            ArrayGeometry(4, 4, -0.05, 0.05)
        with self.assertRaises(ConfigError):
            ArrayGeometry(2.5, 4, 0.05, 0.05)

    def test_half_wavelength_spacing_is_accepted(self):
        ArrayGeometry.square(4, WAVELENGTH / 2).check_spacing(WAVELENGTH)
        with self.assertRaises(ConfigError):
            ArrayGeometry(2, 2, 0.06, 0.05).check_spacing(WAVELENGTH)

    def test_grid_runs_along_rows(self):
        i, j = ArrayGeometry(3, 2, 0.01, 0.01).grid()
        np.testing.assert_array_equal(i, [0, 1, 2, 0, 1, 2])
        np.testing.assert_array_equal(j, [0, 0, 0, 1, 1, 1])

    def test_angles_must_be_finite(self):
        with self.assertRaises(ConfigError):
            Angles(math.nan, 0.0)


class ExponentTests(SimpleTestCase):
    def setUp(self):
        self.geom = ArrayGeometry(8, 4, 0.05, 0.05)
        self.ang = Angles(math.pi / 6, math.pi / 3)

    def test_index_maps(self):
        self.assertEqual(index_maps(1, 8), (0, 0))
        self.assertEqual(index_maps(8, 8), (7, 0))
        self.assertEqual(index_maps(9, 8), (0, 1))
        with self.assertRaises(ConfigError):
            index_maps(0, 8)

    def test_first_element_is_the_reference(self):
        self.assertEqual(exponent(self.geom, 1, self.ang), 0.0)

    def test_scalar_matches_vector(self):
        vector = exponent_vector(self.geom, self.ang)
        for k in (1, 2, 9, 32):
            self.assertAlmostEqual(exponent(self.geom, k, self.ang), vector[k - 1], places=15)

    def test_exponent_index_out_of_range(self):
        with self.assertRaises(DimensionError):
            exponent(self.geom, 33, self.ang)

    def test_array_response_has_unit_modulus(self):
        response = array_response(self.geom, self.ang, WAVELENGTH)
        np.testing.assert_allclose(np.abs(response), 1.0, atol=1e-14)


class PhaseRuleTests(SimpleTestCase):
    def test_phase_rule_aligns_every_term(self):
        irs = ArrayGeometry(8, 32, WAVELENGTH / 2, WAVELENGTH / 2)
        aoa = Angles(math.pi / 6, math.pi / 3)
        aod = Angles(math.pi / 8, 2 * math.pi / 3)
        beta = optimal_phase_shifts(irs, aoa, aod, WAVELENGTH)
        self.assertAlmostEqual(los_alignment(irs, aoa, aod, WAVELENGTH, beta), irs.size, delta=1e-9 * irs.size)

    def test_zero_phases_do_not_beat_the_rule(self):
        irs = ArrayGeometry.square(6, WAVELENGTH / 2)
        aoa = Angles(math.pi / 6, math.pi / 3)
        aod = Angles(math.pi / 8, 2 * math.pi / 3)
        self.assertLess(los_alignment(irs, aoa, aod, WAVELENGTH, np.zeros(irs.size)), irs.size)

    def test_phase_vector_length_is_checked(self):
        irs = ArrayGeometry.square(4, WAVELENGTH / 2)
        ang = Angles(0.1, 0.2)
        with self.assertRaises(DimensionError):
            los_alignment(irs, ang, ang, WAVELENGTH, np.zeros(3))

    def test_phase_matrix(self):
        np.testing.assert_allclose(phase_matrix([0.0, math.pi / 2]), [1.0, -1j], atol=1e-15)
