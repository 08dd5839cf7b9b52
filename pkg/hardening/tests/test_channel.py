import math

import numpy as np
from django.test import SimpleTestCase

from hardening import rng as streams
from hardening.analytics import snr_law_params
from hardening.channel import (
    SystemConfig,
    capacity,
    end_to_end,
    los_bs_irs,
    mean_los_channel,
    mean_reflect,
    sample_channel,
    sample_direct,
    sample_gamma_decomposed,
    sample_reflect,
    scatter_scale,
)
from hardening.errors import ConfigError, DimensionError
from hardening.geometry import ArrayGeometry
from hardening.harness import CapacityTrial, map_trials
from hardening.tests.utils import baseline


class SystemConfigTests(SimpleTestCase):
    def test_baseline_gains(self):
        cfg = baseline().system()
        self.assertEqual((cfg.m, cfg.n), (4, 256))
        self.assertAlmostEqual(cfg.direct_gain, 1.0)
        self.assertAlmostEqual(cfg.alpha_bar, 0.5)

    def test_validation(self):
        cfg = baseline(irs_nx=2, irs_ny=2).system()
        kwargs = dict(
            bs=cfg.bs, irs=cfg.irs, wavelength=cfg.wavelength,
            alpha_d=1.0, alpha_s=1.0, alpha_r=1.0, kappa_r=1.0, rho=1.0,
            aoa_irs=cfg.aoa_irs, aod_irs=cfg.aod_irs, aod_bs=cfg.aod_bs,
        )
        for name, value in (("rho", 0.0), ("alpha_d", -1.0), ("kappa_r", -0.5), ("kappa_r", math.inf)):
            with self.subTest(name=name, value=value), self.assertRaises(ConfigError):
                SystemConfig(**{**kwargs, name: value})
        with self.assertRaises(ConfigError):
            SystemConfig(**{**kwargs, "irs": ArrayGeometry(2, 2, 0.08, 0.05)})


class SamplerTests(SimpleTestCase):
    def setUp(self):
        self.scenario = baseline(irs_nx=4, irs_ny=4)
        self.cfg = self.scenario.system()
        self.cov = self.scenario.covariance_for(self.cfg)

    def test_los_matrix_is_rank_one(self):
        t = los_bs_irs(self.cfg)
        self.assertEqual(t.shape, (16, 4))
        self.assertEqual(np.linalg.matrix_rank(t), 1)

    def test_batched_shapes(self):
        rng = streams.trial_rng(1, 0, streams.DIRECT)
        self.assertEqual(sample_direct(self.cfg, rng).shape, (4,))
        self.assertEqual(sample_direct(self.cfg, rng, size=5).shape, (5, 4))
        self.assertEqual(sample_reflect(self.cfg, self.cov, rng, size=5).shape, (5, 16))

    def test_reflect_rejects_wrong_covariance(self):
        other = baseline(irs_nx=2, irs_ny=2)
        cov = other.covariance_for(other.system())
        with self.assertRaises(DimensionError):
            sample_reflect(self.cfg, cov, streams.trial_rng(1, 0, streams.REFLECT))

    def test_end_to_end_checks_shapes(self):
        with self.assertRaises(DimensionError):
            end_to_end(self.cfg, np.zeros(4), np.zeros((4, 16)), np.zeros(16), np.zeros(16))

    def test_realization_is_reproducible(self):
        beta = self.cfg.beta_star()
        first = sample_channel(self.cfg, self.cov, beta, 99, 5)
        again = sample_channel(self.cfg, self.cov, beta, 99, 5)
        other = sample_channel(self.cfg, self.cov, beta, 99, 6)
        np.testing.assert_array_equal(first.h_end, again.h_end)
        self.assertFalse(np.array_equal(first.h_end, other.h_end))
        self.assertAlmostEqual(first.gamma, float(np.sum(np.abs(first.h_end) ** 2)) / 4)
        self.assertAlmostEqual(first.capacity, math.log2(1 + 4 * first.gamma))

    def test_mean_channel_carries_full_array_gain(self):
        h_bar = mean_los_channel(self.cfg)
        expected = self.cfg.kappa_r * self.cfg.alpha_bar * self.cfg.n**2
        self.assertAlmostEqual(float(np.mean(np.abs(h_bar) ** 2)), expected, delta=1e-9 * expected)

    def test_gamma_mean_matches_law(self):
        params = snr_law_params(self.cfg, self.cov)
        beta = self.cfg.beta_star()
        t = los_bs_irs(self.cfg)
        trials = 3000
        gammas = np.array([sample_channel(self.cfg, self.cov, beta, 11, k, t).gamma for k in range(trials)])
        error = 4 * params.sigma_gamma / math.sqrt(trials)
        self.assertAlmostEqual(float(gammas.mean()), params.mu_gamma, delta=error)

    def test_decomposed_sampler_mean(self):
        params = snr_law_params(self.cfg, self.cov)
        draws = sample_gamma_decomposed(params, self.cfg, streams.trial_rng(3, 0, streams.DECOMPOSED), size=20000)
        self.assertEqual(draws.shape, (20000,))
        self.assertAlmostEqual(float(draws.mean()), params.mu_gamma, delta=4 * params.sigma_gamma / math.sqrt(20000))
        single = sample_gamma_decomposed(params, self.cfg, streams.trial_rng(3, 1, streams.DECOMPOSED))
        self.assertIsInstance(single, float)


class CapacityTests(SimpleTestCase):
    def test_unit_snr_gives_one_bit(self):
        cfg = baseline(irs_nx=2, irs_ny=2).system()
        gamma, cap = capacity(cfg, np.array([1.0, 0.0, 0.0, 0.0]))
        self.assertAlmostEqual(gamma, 0.25)
        self.assertAlmostEqual(cap, 1.0)

    def test_batched(self):
        cfg = baseline(irs_nx=2, irs_ny=2).system()
        gamma, cap = capacity(cfg, np.zeros((3, 4)))
        np.testing.assert_array_equal(gamma, 0.0)
        np.testing.assert_array_equal(cap, 0.0)


class ChannelStatisticsTests(SimpleTestCase):
    def setUp(self):
        self.scenario = baseline(irs_nx=4, irs_ny=4)
        self.cfg = self.scenario.system()
        self.cov = self.scenario.covariance_for(self.cfg)

    def test_direct_link_power(self):
        draws = sample_direct(self.cfg, streams.trial_rng(21, 0, streams.DIRECT), size=100000)
        power = float(np.mean(np.abs(draws) ** 2))
        self.assertAlmostEqual(power, self.cfg.direct_gain, delta=0.02 * self.cfg.direct_gain)

    def test_reflect_scatter_covariance(self):
        draws = sample_reflect(self.cfg, self.cov, streams.trial_rng(22, 0, streams.REFLECT), size=100000)
        scattered = draws - mean_reflect(self.cfg)
        empirical = scattered.T @ scattered.conj() / len(scattered)
        expected = scatter_scale(self.cfg) ** 2 * self.cov.matrix
        error = np.linalg.norm(empirical - expected) / np.linalg.norm(expected)
        self.assertLess(error, 0.05)

    def test_reflect_collapses_to_line_of_sight(self):
        cfg = baseline(irs_nx=4, irs_ny=4, kappa_r=1e12).system()
        draw = sample_reflect(cfg, self.cov, streams.trial_rng(23, 0, streams.REFLECT))
        los = math.sqrt(cfg.alpha_r * cfg.a_n) * cfg.irs_departure()
        self.assertLess(float(np.max(np.abs(draw - los)) / np.max(np.abs(los))), 1e-5)

    def test_end_to_end_matches_double_loop(self):
        rng = streams.trial_rng(24, 0, streams.DIRECT)
        h_d = sample_direct(self.cfg, rng)
        h_r = sample_reflect(self.cfg, self.cov, streams.trial_rng(24, 0, streams.REFLECT))
        t = los_bs_irs(self.cfg)
        beta = np.random.default_rng(24).uniform(0, 2 * np.pi, self.cfg.n)
        expected = np.array(h_d, dtype=complex)
        for m in range(self.cfg.m):
            for n in range(self.cfg.n):
                expected[m] += np.exp(-1j * beta[n]) * h_r[n] * t[n, m]
        np.testing.assert_allclose(end_to_end(self.cfg, h_d, t, h_r, beta), expected, rtol=0, atol=1e-10)

    def test_gain_is_deterministic_without_scattering(self):
        cfg = baseline(irs_nx=4, irs_ny=4, kappa_r=1e12, gain_d=1e-12).system()
        t = los_bs_irs(cfg)
        beta = cfg.beta_star()
        gammas = np.array([sample_channel(cfg, self.cov, beta, 25, k, t).gamma for k in range(200)])
        self.assertLess(float(gammas.var() / gammas.mean() ** 2), 1e-6)

    def test_phase_rule_maximizes_the_sample_mean(self):
        best = float(np.mean(np.concatenate(map_trials(500, 26, CapacityTrial(self.cfg, self.cov, quantity="gamma")))))
        rng = np.random.default_rng(26)
        for _ in range(20):
            beta = rng.uniform(0, 2 * np.pi, self.cfg.n)
            work = CapacityTrial(self.cfg, self.cov, beta, quantity="gamma")
            self.assertLess(float(np.mean(np.concatenate(map_trials(500, 26, work)))), best)
