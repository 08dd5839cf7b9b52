"""
IRS size versus transmit-array size.

Responsibilities:
- Distance-based path-loss budget (α_i = α_ref / D_i^ε_i)
- Ergodic capacity at a real-valued antenna count and the minimal M for a target
- Gaussian outage probability and the minimal M for a rate/outage target
- Both minima over a grid of square IRS sizes
"""

import dataclasses
import logging
import math
from dataclasses import dataclass

from scipy import optimize

from hardening.analytics import q_function, q_inverse
from hardening.errors import ConfigError, NumericalError
from hardening.statistics import LOG2_E, hardening_terms, prop1_capacity_law

logger = logging.getLogger(__name__)

BRACKET_LIMIT = 1e9
ROOT_XTOL = 1e-12


@dataclass(frozen=True)
class LinkBudget:
    """Reference loss and distances/exponents of the BS->IRS (s), BS->user (d) and IRS->user (r) links."""

    alpha_ref: float
    d_s: float
    d_d: float
    d_r: float
    eps_s: float
    eps_d: float
    eps_r: float

    def __post_init__(self):
        if not self.alpha_ref > 0:
            raise ConfigError(f"alpha_ref must be positive, got {self.alpha_ref!r}")
        for name in ("d_s", "d_d", "d_r"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be a positive distance, got {getattr(self, name)!r}")
        for name in ("eps_s", "eps_d", "eps_r"):
            if not getattr(self, name) >= 0:
                raise ConfigError(f"{name} must be nonnegative, got {getattr(self, name)!r}")

    @classmethod
    def from_db(cls, alpha_ref_db, **distances):
        return cls(alpha_ref=10 ** (alpha_ref_db / 10), **distances)

    def path_losses(self):
        """Return (α_s, α_d, α_r)."""
        return (
            self.alpha_ref / self.d_s**self.eps_s,
            self.alpha_ref / self.d_d**self.eps_d,
            self.alpha_ref / self.d_r**self.eps_r,
        )

    def apply(self, cfg):
        """Scenario with these path losses and unit areas (areas absorbed into α)."""
        alpha_s, alpha_d, alpha_r = self.path_losses()
        return dataclasses.replace(
            cfg, alpha_s=alpha_s, alpha_d=alpha_d, alpha_r=alpha_r, area_m=1.0, area_n=1.0
        )


@dataclass(frozen=True)
class TradeoffPoint:
    n: int
    m_real: float
    m_min: int

    @classmethod
    def from_real(cls, n, m_real):
        return cls(n=n, m_real=m_real, m_min=max(1, math.ceil(m_real)))


def ergodic_capacity(cfg, cov, m):
    """log2(1 + ρ·m·μ) in bits for a real antenna count m."""
    if not m > 0:
        raise ConfigError(f"Antenna count must be positive, got {m}")
    mu = hardening_terms(cfg, cov, m)[0]
    return math.log2(1 + cfg.rho * m * mu)


def m_erg(cfg, cov, target_cbar):
    if not target_cbar > 0:
        raise ConfigError(f"Target ergodic capacity must be positive, got {target_cbar}")
    mu = hardening_terms(cfg, cov)[0]
    m_real = math.expm1(target_cbar * math.log(2)) / (cfg.rho * mu)
    return TradeoffPoint.from_real(cfg.n, m_real)


def outage_probability(law, target_rate):
    """P(C < R) under the Gaussian capacity law."""
    return float(q_function((law.mu_c - target_rate) / law.sigma_c))


def achieved_outage(cfg, cov, m, target_rate):
    return outage_probability(prop1_capacity_law(cfg, cov, m), target_rate)


def _outage_gap(cfg, cov, target_rate, p_out):
    """g(x) = log2(1+ρμx) - R - C·sqrt(Bx² + ω α_d A_M x)/(1+ρμx)."""
    mu, _, omega, scatter = hardening_terms(cfg, cov)
    gain_d = cfg.direct_gain
    rho = cfg.rho
    b_coef = (omega + 1) * scatter + gain_d
    c_coef = rho * float(q_inverse(p_out)) * LOG2_E

    def gap(x):
        growth = 1 + rho * mu * x
        return math.log2(growth) - target_rate - c_coef / growth * math.sqrt(b_coef * x * x + omega * gain_d * x)

    return gap


def m_out(cfg, cov, target_rate, p_out):
    """Smallest real M meeting rate ``target_rate`` with outage ``p_out``."""
    if not target_rate > 0:
        raise ConfigError(f"Target rate must be positive, got {target_rate}")
    if not 0 < p_out <= 0.5:
        raise ConfigError(f"Outage probability must lie in (0, 0.5], got {p_out}")

    gap = _outage_gap(cfg, cov, target_rate, p_out)
    lo, hi = 0.0, 1.0
    while gap(hi) <= 0:
        lo, hi = hi, 2 * hi
        if hi > BRACKET_LIMIT:
            logger.warning("Rate %.3g at outage %.3g unreachable for N=%d", target_rate, p_out, cfg.n)
            raise NumericalError(
                f"Target unreachable at N={cfg.n}: no antenna count up to {BRACKET_LIMIT:g} "
                f"reaches rate {target_rate} with outage {p_out}"
            )
    logger.debug("Outage root bracketed in [%g, %g] for N=%d", lo, hi, cfg.n)
    root = optimize.bisect(gap, lo, hi, xtol=ROOT_XTOL, maxiter=500)
    return TradeoffPoint.from_real(cfg.n, root)


def _grid_systems(scenario, n_grid):
    for n in n_grid:
        side = math.isqrt(int(n))
        if side * side != n:
            raise ConfigError(f"IRS size {n} is not a perfect square")
        system = scenario.system(side, side)
        yield system, scenario.covariance_for(system)


def erg_tradeoff(scenario, n_grid, target_cbar):
    """m_erg over square IRS sizes of ``n_grid``."""
    return [m_erg(cfg, cov, target_cbar) for cfg, cov in _grid_systems(scenario, n_grid)]


def out_tradeoff(scenario, n_grid, target_rate, p_out):
    """m_out over square IRS sizes of ``n_grid``."""
    return [m_out(cfg, cov, target_rate, p_out) for cfg, cov in _grid_systems(scenario, n_grid)]
