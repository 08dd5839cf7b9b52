import numpy as np
from django.test import SimpleTestCase

from hardening.errors import ConfigError
from hardening.fitting import lambda_max_series, power_law_fit, u_vs_q_sweep

WAVELENGTH = 0.1
# Square sizes 8x8 through 36x36.
N_GRID = tuple(side * side for side in range(8, 37))
Q_GRID = tuple(step / 10 for step in range(11))


class PowerLawFitTests(SimpleTestCase):
    def test_recovers_exact_law(self):
        points = [(n, 3.0 * n**0.4) for n in (16, 64, 256, 1024)]
        fit = power_law_fit(points)
        self.assertAlmostEqual(fit.a, 3.0, places=10)
        self.assertAlmostEqual(fit.u, 0.4, places=12)
        self.assertAlmostEqual(fit.residual, 0.0, places=10)
        np.testing.assert_allclose(fit.predict([100, 400]), 3.0 * np.array([100, 400]) ** 0.4)

    def test_needs_two_positive_points(self):
        with self.assertRaises(ConfigError):
            power_law_fit([(4, 1.0)])
        with self.assertRaises(ConfigError):
            power_law_fit([(4, 1.0), (9, 0.0)])


class EigenvalueGrowthTests(SimpleTestCase):
    def test_series_grows_with_size(self):
        series = lambda_max_series((64, 144, 256), WAVELENGTH)
        values = [value for _, value in series]
        self.assertEqual([n for n, _ in series], [64, 144, 256])
        self.assertGreater(values[0], 1.0)
        self.assertTrue(values[0] < values[1] < values[2])

    def test_non_square_size(self):
        with self.assertRaises(ConfigError):
            lambda_max_series((60,), WAVELENGTH)

    def test_fixed_pitch_law(self):
        fit = power_law_fit(lambda_max_series(N_GRID, WAVELENGTH))
        self.assertGreaterEqual(fit.a, 0.73)
        self.assertLessEqual(fit.a, 0.93)
        self.assertGreater(fit.u, 0.2)
        self.assertLess(fit.u, 0.3)

    def test_exponent_rises_with_area_scaling(self):
        pairs = u_vs_q_sweep(Q_GRID, N_GRID, WAVELENGTH)
        self.assertEqual([q for q, _ in pairs], list(Q_GRID))
        exponents = [u for _, u in pairs]
        self.assertTrue(all(left <= right for left, right in zip(exponents, exponents[1:])))
        self.assertAlmostEqual(exponents[0], 0.25, delta=0.05)
        self.assertGreaterEqual(exponents[-1], 0.98)
        for q, u in pairs[:-1]:
            with self.subTest(q=q):
                self.assertGreaterEqual(u, q)

    def test_q_outside_unit_interval(self):
        with self.assertRaises(ConfigError):
            u_vs_q_sweep((1.5,), N_GRID, WAVELENGTH)
