"""
Large-N capacity laws at the phase rule.

Responsibilities:
- Gaussian capacity law (μ_C, σ_C) and its auxiliary terms μ, η, ω
- Rank-one variance correction through ϑ
- Hardening-order floor on μ_C and ceiling shape on σ²_C
- Gaussian capacity density
"""

import logging
import math
from dataclasses import dataclass

from scipy import stats

from hardening.errors import ConfigError

logger = logging.getLogger(__name__)

LOG2_E = math.log2(math.e)


@dataclass(frozen=True)
class CapacityLaw:
    mu_c: float
    sigma_c: float
    sigma_c_hat: float | None
    mu_aux: float
    eta_aux: float
    omega_aux: float
    vartheta: float

    @property
    def sigma2_c(self):
        return self.sigma_c**2

    @property
    def sigma2_c_hat(self):
        return None if self.sigma_c_hat is None else self.sigma_c_hat**2

    def spread(self, corrected=False):
        """σ_C, or σ̂_C when ``corrected``."""
        if not corrected:
            return self.sigma_c
        if self.sigma_c_hat is None:
            raise ConfigError("The rank-one variance correction needs kappa_r > 0")
        return self.sigma_c_hat


def scatter_term(cfg, cov):
    """ᾱ_N·h̄_rᴴRh̄_r."""
    return cfg.alpha_bar * cov.quadratic_form(cfg.irs_departure())


def hardening_terms(cfg, cov, m=None):
    """Return (μ, η, ω, ᾱ_N h̄ᴴRh̄); ``m`` overrides the antenna count with a real value."""
    m = cfg.m if m is None else m
    los = cfg.kappa_r * cfg.alpha_bar * cfg.n**2
    scatter = scatter_term(cfg, cov)
    gain_d = cfg.direct_gain
    mu = gain_d + los + scatter
    eta = gain_d / m + scatter
    omega = 2 * los + scatter
    return mu, eta, omega, scatter


def mean_snr_gain(cfg, cov):
    return hardening_terms(cfg, cov)[0]


def prop1_capacity_law(cfg, cov, m=None):
    """Gaussian law of C at the phase rule; ``m`` may be a real-valued antenna count."""
    m = cfg.m if m is None else float(m)
    if m <= 0:
        raise ConfigError(f"Antenna count must be positive, got {m}")
    mu, eta, omega, _ = hardening_terms(cfg, cov, m)
    gain_d = cfg.direct_gain
    snr = cfg.rho * m
    sigma_c = snr * LOG2_E / (1 + snr * mu) * math.sqrt(omega * eta + eta + (m - 1) / m * gain_d)

    vartheta = gain_d / (2 * cfg.alpha_bar * cfg.n**2)
    if cfg.kappa_r > 0:
        sigma_c_hat = math.sqrt(cfg.kappa_r / (cfg.kappa_r + vartheta)) * sigma_c
    else:
        sigma_c_hat = None

    return CapacityLaw(
        mu_c=math.log2(1 + snr * mu),
        sigma_c=sigma_c,
        sigma_c_hat=sigma_c_hat,
        mu_aux=mu,
        eta_aux=eta,
        omega_aux=omega,
        vartheta=vartheta,
    )


def asymptotic_variance_ratio(cfg):
    """σ²_∞ relative to σ²_C for a rank-one R: κ_r / (κ_r + ϑ)."""
    vartheta = cfg.direct_gain / (2 * cfg.alpha_bar * cfg.n**2)
    return cfg.kappa_r / (cfg.kappa_r + vartheta)


def floor_offset(cfg, scaling):
    """b = log2(α_r α_s ρ M κ_r A_0² / (1 + κ_r))."""
    if cfg.kappa_r <= 0:
        raise ConfigError("The mean-capacity floor needs kappa_r > 0")
    value = cfg.alpha_r * cfg.alpha_s / (1 + cfg.kappa_r) * cfg.rho * cfg.m * cfg.kappa_r * scaling.a0**2
    return math.log2(value)


def calibrated_floor_offset(mu_c, n, q):
    """b that makes the floor touch the analytic mean capacity ``mu_c`` at size ``n``."""
    return mu_c - (1 - q) * math.log2(n)


def prop2_bounds(cfg, scaling, eig_fit, n, offset=None):
    """
    Return (mean_floor, var_ceiling_shape) at IRS size ``n``.

    mean_floor = b + (1-q)·log2 N, with b from the link budget unless
    ``offset`` supplies a calibrated one. The ceiling shape N^-(1-u) still
    needs the caller's constant c.
    """
    u = eig_fit.u if hasattr(eig_fit, "u") else eig_fit[1]
    if not 0 <= scaling.q < 1:
        raise ConfigError(f"The hardening-order floor needs 0 <= q < 1, got q={scaling.q}")
    if not 0 <= u < 1:
        raise ConfigError(f"The hardening-order ceiling needs 0 <= u < 1, got u={u}")
    if n < 1:
        raise ConfigError(f"IRS size must be at least 1, got {n}")
    b = floor_offset(cfg, scaling) if offset is None else offset
    return b + (1 - scaling.q) * math.log2(n), float(n) ** (-(1 - u))


def gaussian_capacity_pdf(law, c, corrected=False):
    return stats.norm.pdf(c, loc=law.mu_c, scale=law.spread(corrected))
