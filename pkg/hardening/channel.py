"""
Channel sampling for the IRS-aided MISO downlink.

Responsibilities:
- SystemConfig: the full scenario (arrays, path losses, Rician factor, angles, power)
- Samplers for the direct Rayleigh link and the correlated Rician IRS->user link
- The deterministic rank-one BS->IRS LoS matrix
- End-to-end channel, SNR gain and capacity
- The two-variable decomposed sampler of the SNR gain
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from hardening import rng as streams
from hardening.errors import ConfigError, DimensionError
from hardening.geometry import Angles, ArrayGeometry, array_response, optimal_phase_shifts, phase_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemConfig:
    """
    One downlink scenario.

    alpha_* are path-loss coefficients per unit area, so alpha_d·A_M,
    alpha_s·A_N and alpha_r·A_N are dimensionless. area_m and area_n
    override the geometric areas when the link budget absorbs them.
    """

    bs: ArrayGeometry
    irs: ArrayGeometry
    wavelength: float
    alpha_d: float
    alpha_s: float
    alpha_r: float
    kappa_r: float
    rho: float
    aoa_irs: Angles
    aod_irs: Angles
    aod_bs: Angles
    area_m: float | None = field(default=None)
    area_n: float | None = field(default=None)

    def __post_init__(self):
        if not math.isfinite(self.wavelength) or self.wavelength <= 0:
            raise ConfigError(f"wavelength must be positive, got {self.wavelength!r}")
        for name in ("alpha_d", "alpha_s", "alpha_r", "rho"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{name} must be positive, got {value!r}")
        if not (math.isfinite(self.kappa_r) and self.kappa_r >= 0):
            raise ConfigError(f"kappa_r must be finite and nonnegative, got {self.kappa_r!r}")
        for name in ("area_m", "area_n"):
            value = getattr(self, name)
            if value is not None and (not math.isfinite(value) or value <= 0):
                raise ConfigError(f"{name} must be positive, got {value!r}")
        self.bs.check_spacing(self.wavelength)
        self.irs.check_spacing(self.wavelength)

    @property
    def m(self):
        return self.bs.size

    @property
    def n(self):
        return self.irs.size

    @property
    def a_m(self):
        return self.bs.area if self.area_m is None else self.area_m

    @property
    def a_n(self):
        return self.irs.area if self.area_n is None else self.area_n

    @property
    def direct_gain(self):
        """α_d·A_M."""
        return self.alpha_d * self.a_m

    @property
    def alpha_bar(self):
        """ᾱ_N = α_r α_s A_N² / (1 + κ_r)."""
        return self.alpha_r * self.alpha_s * self.a_n**2 / (1 + self.kappa_r)

    def beta_star(self):
        return optimal_phase_shifts(self.irs, self.aoa_irs, self.aod_irs, self.wavelength)

    def irs_arrival(self):
        """ḡ_r: IRS response towards the BS."""
        return array_response(self.irs, self.aoa_irs, self.wavelength)

    def irs_departure(self):
        """h̄_r: IRS response towards the user."""
        return array_response(self.irs, self.aod_irs, self.wavelength)


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    h_direct: np.ndarray
    t_matrix: np.ndarray
    h_reflect: np.ndarray
    h_end: np.ndarray
    gamma: float
    capacity: float


def sample_direct(cfg, rng, size=None):
    """h_d ~ CN(0, α_d A_M I_M); ``size`` prepends a batch axis."""
    shape = (cfg.m,) if size is None else (size, cfg.m)
    return math.sqrt(cfg.direct_gain) * streams.complex_normal(rng, shape)


def los_bs_irs(cfg):
    """T = sqrt(α_s A_N)·a_N(arrival)·a_M(BS departure)ᴴ, an N×M rank-one matrix."""
    a_n = cfg.irs_arrival()
    a_m = array_response(cfg.bs, cfg.aod_bs, cfg.wavelength)
    return math.sqrt(cfg.alpha_s * cfg.a_n) * np.outer(a_n, a_m.conj())


def mean_reflect(cfg):
    """Deterministic LoS part of h_r."""
    los_share = cfg.kappa_r / (cfg.kappa_r + 1)
    return math.sqrt(cfg.alpha_r * cfg.a_n * los_share) * cfg.irs_departure()


def mean_los_channel(cfg, beta=None):
    """Deterministic part h̄ of the end-to-end channel at phases ``beta`` (β* by default)."""
    beta = cfg.beta_star() if beta is None else beta
    return end_to_end(cfg, np.zeros(cfg.m), los_bs_irs(cfg), mean_reflect(cfg), beta)


def scatter_scale(cfg):
    """Standard deviation scale sqrt(α_r A_N / (κ_r + 1)) of the scattered part."""
    return math.sqrt(cfg.alpha_r * cfg.a_n / (cfg.kappa_r + 1))


def sample_reflect(cfg, cov, rng, size=None):
    """Correlated Rician IRS->user coefficients; ``size`` prepends a batch axis."""
    if cov.size != cfg.n:
        raise DimensionError(f"Covariance is {cov.size}x{cov.size}, IRS has {cfg.n} elements")
    shape = (cfg.n,) if size is None else (size, cfg.n)
    z = streams.complex_normal(rng, shape)
    return mean_reflect(cfg) + scatter_scale(cfg) * (z @ cov.sqrt_factor.T)


def end_to_end(cfg, h_d, t_matrix, h_r, beta):
    """h_m = h_d,m + Σ_n exp(-jβ_n)·h_r,n·t_nm, batched over leading axes."""
    h_d = np.asarray(h_d, dtype=complex)
    h_r = np.asarray(h_r, dtype=complex)
    t_matrix = np.asarray(t_matrix, dtype=complex)
    beta = np.asarray(beta, dtype=float)
    if t_matrix.shape != (cfg.n, cfg.m):
        raise DimensionError(f"T has shape {t_matrix.shape}, expected ({cfg.n}, {cfg.m})")
    if h_r.shape[-1] != cfg.n or beta.shape != (cfg.n,):
        raise DimensionError("Reflect channel and phase vector must both have length N")
    if h_d.shape[-1] != cfg.m:
        raise DimensionError(f"Direct channel has length {h_d.shape[-1]}, expected {cfg.m}")
    return h_d + (h_r * phase_matrix(beta)) @ t_matrix


def capacity(cfg, h):
    """Return (Γ, C) with Γ = ‖h‖²/M and C = log2(1 + ρMΓ) in bits."""
    h = np.asarray(h, dtype=complex)
    m = h.shape[-1]
    if m < 1:
        raise DimensionError("Channel vector is empty")
    gamma = np.sum(np.abs(h) ** 2, axis=-1) / m
    cap = np.log2(1 + cfg.rho * m * gamma)
    if np.ndim(gamma) == 0:
        return float(gamma), float(cap)
    return gamma, cap


def sample_channel(cfg, cov, beta, master_seed, trial_index, t_matrix=None):
    """Draw one full realization from the trial's direct and reflect streams."""
    if t_matrix is None:
        t_matrix = los_bs_irs(cfg)
    h_d = sample_direct(cfg, streams.trial_rng(master_seed, trial_index, streams.DIRECT))
    h_r = sample_reflect(cfg, cov, streams.trial_rng(master_seed, trial_index, streams.REFLECT))
    h = end_to_end(cfg, h_d, t_matrix, h_r, beta)
    gamma, cap = capacity(cfg, h)
    return ChannelRealization(h_d, t_matrix, h_r, h, gamma, cap)


def sample_gamma_decomposed(params, cfg, rng, size=None):
    """
    Γ = (α_d A_M / M)·V_0 + Λ·V_1.

    V_0 sums M-1 squared CN(0, 1) magnitudes and V_1 = |r|² with
    r ~ CN(sqrt(λ), 1). Returns a float, or an array when ``size`` is given.
    """
    batch = 1 if size is None else size
    gamma = params.lambda_big * np.abs(math.sqrt(params.lambda_nc) + streams.complex_normal(rng, batch)) ** 2
    if cfg.m > 1:
        v0 = np.sum(np.abs(streams.complex_normal(rng, (batch, cfg.m - 1))) ** 2, axis=1)
        gamma = gamma + (cfg.direct_gain / cfg.m) * v0
    return float(gamma[0]) if size is None else gamma
