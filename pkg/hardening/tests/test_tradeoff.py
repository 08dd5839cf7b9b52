import math

from django.test import SimpleTestCase

from hardening.errors import ConfigError, NumericalError
from hardening.tests.utils import shipped
from hardening.tradeoff import (
    LinkBudget,
    TradeoffPoint,
    achieved_outage,
    erg_tradeoff,
    ergodic_capacity,
    m_erg,
    m_out,
    out_tradeoff,
)

DISTANCES = dict(d_s=25.0, d_d=20.0, d_r=15.0, eps_s=2.3, eps_d=3.5, eps_r=2.3)


def _tradeoff_system(side):
    scenario = shipped("tradeoff.conf").scenario
    cfg = scenario.system(side, side)
    return cfg, scenario.covariance_for(cfg)


class LinkBudgetTests(SimpleTestCase):
    def test_path_losses(self):
        budget = LinkBudget(alpha_ref=10.0, **DISTANCES)
        alpha_s, alpha_d, alpha_r = budget.path_losses()
        self.assertAlmostEqual(alpha_s, 10 / 25**2.3)
        self.assertAlmostEqual(alpha_d, 10 / 20**3.5)
        self.assertAlmostEqual(alpha_r, 10 / 15**2.3)

    def test_from_db(self):
        self.assertAlmostEqual(LinkBudget.from_db(10.0, **DISTANCES).alpha_ref, 10.0)

    def test_validation(self):
        with self.assertRaises(ConfigError):
            LinkBudget(alpha_ref=10.0, **{**DISTANCES, "d_s": 0.0})
        with self.assertRaises(ConfigError):
            LinkBudget(alpha_ref=-1.0, **DISTANCES)

    def test_applied_scenario_uses_unit_areas(self):
        cfg, _ = _tradeoff_system(8)
        self.assertEqual((cfg.a_m, cfg.a_n), (1.0, 1.0))
        self.assertAlmostEqual(cfg.direct_gain, 10 / 20**3.5)


class ErgodicTradeoffTests(SimpleTestCase):
    def test_goldens(self):
        cases = ((8, 1.0, 3.96294667, 4), (8, 3.0, 27.7406267, 28), (20, 3.0, 0.725634, 1))
        for side, cbar, m_real, m_min in cases:
            with self.subTest(n=side * side, cbar=cbar):
                cfg, cov = _tradeoff_system(side)
                point = m_erg(cfg, cov, cbar)
                self.assertAlmostEqual(point.m_real, m_real, delta=0.01 * m_real)
                self.assertEqual(point.m_min, m_min)

    def test_back_substitution(self):
        cfg, cov = _tradeoff_system(8)
        point = m_erg(cfg, cov, 3.0)
        self.assertAlmostEqual(ergodic_capacity(cfg, cov, point.m_real), 3.0, delta=1e-9)

    def test_fewer_antennas_with_larger_irs(self):
        points = erg_tradeoff(shipped("tradeoff.conf").scenario, (64, 144, 256), 3.0)
        self.assertEqual([p.n for p in points], [64, 144, 256])
        self.assertTrue(points[0].m_real > points[1].m_real > points[2].m_real)

    def test_invalid_target(self):
        cfg, cov = _tradeoff_system(8)
        with self.assertRaises(ConfigError):
            m_erg(cfg, cov, 0.0)

    def test_minimum_is_at_least_one(self):
        self.assertEqual(TradeoffPoint.from_real(64, 0.2).m_min, 1)
        self.assertEqual(TradeoffPoint.from_real(64, 3.0).m_min, 3)


class OutageTradeoffTests(SimpleTestCase):
    def test_median_outage_matches_ergodic(self):
        cfg, cov = _tradeoff_system(8)
        point = m_out(cfg, cov, 3.0, 0.5)
        self.assertAlmostEqual(point.m_real, m_erg(cfg, cov, 3.0).m_real, delta=1e-6)

    def test_goldens(self):
        cfg, cov = _tradeoff_system(8)
        strict = m_out(cfg, cov, 3.0, 0.01)
        stricter = m_out(cfg, cov, 3.0, 0.001)
        self.assertAlmostEqual(strict.m_real, 69.3934124, delta=1.0)
        self.assertAlmostEqual(stricter.m_real, 94.2216196, delta=1.5)
        self.assertEqual(stricter.m_min, math.ceil(stricter.m_real))

    def test_root_reproduces_outage(self):
        cfg, cov = _tradeoff_system(8)
        for p_out in (0.1, 0.01, 0.001):
            with self.subTest(p_out=p_out):
                point = m_out(cfg, cov, 3.0, p_out)
                self.assertAlmostEqual(achieved_outage(cfg, cov, point.m_real, 3.0), p_out, delta=1e-6)

    def test_invalid_inputs(self):
        cfg, cov = _tradeoff_system(8)
        with self.assertRaises(ConfigError):
            m_out(cfg, cov, 3.0, 0.7)
        with self.assertRaises(ConfigError):
            m_out(cfg, cov, -1.0, 0.1)

    def test_unreachable_rate(self):
        cfg, cov = _tradeoff_system(8)
        with self.assertLogs("hardening.tradeoff", level="WARNING"), self.assertRaises(NumericalError):
            m_out(cfg, cov, 40.0, 0.01)

    def test_grid(self):
        points = out_tradeoff(shipped("tradeoff.conf").scenario, (64, 100), 3.0, 0.01)
        self.assertEqual([p.n for p in points], [64, 100])
        self.assertGreater(points[0].m_real, points[1].m_real)
