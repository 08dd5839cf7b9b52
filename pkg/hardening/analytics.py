"""
Exact and bounding laws of the end-to-end SNR gain.

Responsibilities:
- Special functions: Q-function and its inverse, modified Bessel I0 (log-safe)
- SnrLawParams for any phase vector: E, F_0, F_1, Λ, λ, τ_M, μ_Γ, σ²_Γ
- Generalized chi-square density and CDF of Γ by adaptive quadrature
- Skewness of Γ, which vanishes as the IRS grows
- Capacity-domain density and quadrature moments
- Eigenvalue bounds on the mean and variance of Γ at the phase rule
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special, stats

from hardening.errors import ConfigError, DimensionError
from hardening.geometry import phase_matrix

logger = logging.getLogger(__name__)

QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200
# Upper tail probability of V_0 beyond which the convolution is truncated.
V0_TAIL = 1e-20


# ==================== SPECIAL FUNCTIONS ====================


def q_function(x):
    """Standard normal tail probability Q(x) = P(Z > x)."""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2))


def log_q_function(x):
    """log Q(x), accurate deep in the upper tail."""
    return special.log_ndtr(-np.asarray(x, dtype=float))


def q_inverse(p):
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0) & (p < 1))):
        raise ConfigError(f"Q-inverse needs probabilities strictly inside (0, 1), got {p}")
    return math.sqrt(2) * special.erfcinv(2 * p)


def bessel_i0(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ConfigError("Modified Bessel I0 is evaluated on nonnegative arguments only")
    return special.i0(x)


def log_bessel_i0(x):
    """log I0(x) through the exponentially scaled form; safe for large x."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ConfigError("Modified Bessel I0 is evaluated on nonnegative arguments only")
    return np.log(special.i0e(x)) + x


# ==================== SNR LAW ====================


@dataclass(frozen=True)
class SnrLawParams:
    e_val: float
    f0_val: float
    f1_val: float
    lambda_big: float
    lambda_nc: float
    tau_m: float
    mu_gamma: float
    sigma2_gamma: float

    @property
    def sigma_gamma(self):
        return math.sqrt(self.sigma2_gamma)


@dataclass(frozen=True)
class BoundSet:
    mu_lo: float
    mu_hi: float
    var_lo: float
    var_hi: float


def snr_law_params(cfg, cov, beta=None):
    """Distribution parameters of Γ for phase vector ``beta`` (the phase rule by default)."""
    if beta is None:
        beta = cfg.beta_star()
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (cfg.n,):
        raise DimensionError(f"Phase vector has shape {beta.shape}, expected ({cfg.n},)")
    if cov.size != cfg.n:
        raise DimensionError(f"Covariance is {cov.size}x{cov.size}, IRS has {cfg.n} elements")

    weighted = cfg.irs_arrival() * phase_matrix(beta)
    alpha_bar = cfg.alpha_bar
    gain_d = cfg.direct_gain

    e_val = max(alpha_bar * cov.quadratic_form(weighted.conj()), 0.0)
    f0_val = alpha_bar * cfg.kappa_r * abs(np.sum(weighted * cfg.irs_departure())) ** 2
    f1_val = f0_val + e_val
    lambda_big = gain_d / cfg.m + e_val
    return SnrLawParams(
        e_val=e_val,
        f0_val=f0_val,
        f1_val=f1_val,
        lambda_big=lambda_big,
        lambda_nc=f0_val / lambda_big,
        tau_m=cfg.m / gain_d,
        mu_gamma=gain_d + f1_val,
        sigma2_gamma=(gain_d / cfg.m) * (2 * f1_val + gain_d) + e_val * (f0_val + f1_val),
    )


def decomposition_variance(params, cfg):
    """Var Γ from the V_0/V_1 split: (α_d A_M/M)²(M-1) + Λ²(1+2λ)."""
    scale0 = cfg.direct_gain / cfg.m
    return scale0**2 * (cfg.m - 1) + params.lambda_big**2 * (1 + 2 * params.lambda_nc)


def gamma_skewness(params, cfg):
    """Skewness of Γ from the third cumulants of the V_0/V_1 split."""
    scale0 = cfg.direct_gain / cfg.m
    third = 2 * scale0**3 * (cfg.m - 1) + 2 * params.lambda_big**3 * (1 + 3 * params.lambda_nc)
    return third / decomposition_variance(params, cfg) ** 1.5


# ==================== EXACT DENSITY ====================


def _log_f1(x, lam):
    """log density of |r|² with r ~ CN(sqrt(λ), 1)."""
    if x < 0:
        return -math.inf
    z = 2.0 * math.sqrt(lam * x)
    return -x - lam + math.log(special.i0e(z)) + z


def _log_f0_scaled(t, order):
    """log of t^order e^{-t} / order! (the V_0 density with order = M-2)."""
    if t < 0:
        return -math.inf
    return special.xlogy(order, t) - t - special.gammaln(order + 1)


def _v0_cap(cfg, params):
    return stats.gamma.isf(V0_TAIL, cfg.m - 1, scale=1.0 / params.tau_m)


def _log_convolution(params, cfg, gamma):
    order = cfg.m - 2
    tau = params.tau_m
    lam_big = params.lambda_big
    lam = params.lambda_nc
    upper = min(gamma, _v0_cap(cfg, params))
    if upper <= 0:
        return -math.inf

    def log_integrand(v):
        return _log_f1((gamma - v) / lam_big, lam) + _log_f0_scaled(tau * v, order)

    grid = np.linspace(0.0, upper, 65)
    logs = np.array([log_integrand(v) for v in grid])
    peak = float(np.max(logs))
    if not math.isfinite(peak):
        return -math.inf
    breaks = [grid[int(np.argmax(logs))]]
    mode = order / tau
    if 0 < mode < upper:
        breaks.append(mode)
    breaks = sorted(b for b in set(breaks) if 0 < b < upper)

    value, _ = integrate.quad(
        lambda v: math.exp(log_integrand(v) - peak),
        0.0,
        upper,
        points=breaks or None,
        epsabs=0.0,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
    )
    if value <= 0:
        return -math.inf
    return math.log(tau / lam_big) + peak + math.log(value)


def exact_log_density(params, cfg, gamma):
    """log f_Γ(γ); -inf outside the support."""
    if cfg.m < 1:
        raise ConfigError("The exact law needs at least one transmit antenna")
    gamma = float(gamma)
    if gamma < 0:
        return -math.inf
    if cfg.m == 1:
        return _log_f1(gamma / params.lambda_big, params.lambda_nc) - math.log(params.lambda_big)
    return _log_convolution(params, cfg, gamma)


def exact_density(params, cfg, gamma):
    """Generalized chi-square density of Γ; accepts a scalar or an array of γ."""
    if np.ndim(gamma) == 0:
        return math.exp(exact_log_density(params, cfg, gamma))
    values = [math.exp(exact_log_density(params, cfg, g)) for g in np.ravel(gamma)]
    return np.reshape(values, np.shape(gamma))


def _v1_cdf(x, lam):
    """P(V_1 ≤ x): 2V_1 is noncentral chi-square with 2 degrees of freedom."""
    return stats.ncx2.cdf(2.0 * np.maximum(x, 0.0), 2, 2.0 * lam)


def _exact_cdf_scalar(params, cfg, gamma):
    if gamma <= 0:
        return 0.0
    lam_big = params.lambda_big
    lam = params.lambda_nc
    if cfg.m == 1:
        return float(_v1_cdf(gamma / lam_big, lam))
    order = cfg.m - 2
    tau = params.tau_m
    upper = min(tau * gamma, tau * _v0_cap(cfg, params))
    value, _ = integrate.quad(
        lambda t: math.exp(_log_f0_scaled(t, order)) * float(_v1_cdf((gamma - t / tau) / lam_big, lam)),
        0.0,
        upper,
        epsabs=1e-13,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
    )
    return min(max(value, 0.0), 1.0)


def exact_cdf(params, cfg, gamma):
    """P(Γ ≤ γ); scalar or array input."""
    if np.ndim(gamma) == 0:
        return _exact_cdf_scalar(params, cfg, float(gamma))
    gamma = np.asarray(gamma, dtype=float)
    if cfg.m == 1:
        out = _v1_cdf(gamma / params.lambda_big, params.lambda_nc)
        return np.where(gamma > 0, out, 0.0)
    return np.reshape([_exact_cdf_scalar(params, cfg, g) for g in gamma.ravel()], gamma.shape)


def capacity_density(params, cfg, c):
    """Density of C = log2(1 + ρMΓ) by change of variables."""
    c = np.asarray(c, dtype=float)
    scale = cfg.rho * cfg.m
    gamma = np.expm1(c * math.log(2)) / scale
    jacobian = np.exp2(c) * math.log(2) / scale
    return exact_density(params, cfg, gamma) * jacobian


def density_moments(params, cfg, span=40.0):
    """Return (mass, mean, variance) of the exact density by quadrature."""
    mu = params.mu_gamma
    sigma = params.sigma_gamma
    upper = mu + span * sigma
    breaks = [p for p in (mu - 3 * sigma, mu - sigma, mu, mu + sigma, mu + 3 * sigma) if 0 < p < upper]

    def moment(weight):
        value, _ = integrate.quad(
            lambda g: weight(g) * exact_density(params, cfg, g),
            0.0,
            upper,
            points=breaks,
            epsabs=0.0,
            epsrel=QUAD_EPSREL,
            limit=500,
        )
        return value

    mass = moment(lambda g: 1.0)
    mean = moment(lambda g: g) / mass
    variance = moment(lambda g: (g - mean) ** 2) / mass
    logger.debug("Density moments: mass=%.12g mean=%.12g var=%.12g", mass, mean, variance)
    return mass, mean, variance


# ==================== BOUNDS ====================


def theorem2_bounds(cfg, cov):
    """Mean and variance brackets of Γ at the phase rule from λ_min and λ_max of R."""
    n = cfg.n
    m = cfg.m
    gain_d = cfg.direct_gain
    alpha_bar = cfg.alpha_bar
    kappa = cfg.kappa_r
    los = kappa * alpha_bar * n**2

    def xi(lam):
        return gain_d + alpha_bar * lam * n

    def var(lam):
        return (
            gain_d**2 / m
            + (2 * gain_d * lam / m) * alpha_bar * n
            + (2 * gain_d * kappa / m * alpha_bar + alpha_bar**2 * lam**2) * n**2
            + 2 * lam * kappa * alpha_bar**2 * n**3
        )

    lam_lo = cov.lambda_min
    lam_hi = cov.lambda_max
    return BoundSet(
        mu_lo=xi(lam_lo) + los,
        mu_hi=xi(lam_hi) + los,
        var_lo=var(lam_lo),
        var_hi=var(lam_hi),
    )
