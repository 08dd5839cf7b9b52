"""
Experiment runner.

Responsibilities:
- Scenario / ExperimentConfig value types built from scenario files
- RunningStats with an order-stable pairwise merge
- Deterministic chunked Monte Carlo over a process pool
- Histogram and IRS-size sweep experiments with analytic overlays
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from hardening import rng as streams
from hardening.channel import (
    SystemConfig,
    capacity,
    end_to_end,
    los_bs_irs,
    sample_direct,
    sample_gamma_decomposed,
    sample_reflect,
)
from hardening.covariance import (
    IrsScaling,
    allones_covariance,
    element_area,
    identity_covariance,
    sinc_covariance,
)
from hardening.errors import ConfigError
from hardening.export import write_csv
from hardening.geometry import Angles, ArrayGeometry
from hardening.statistics import gaussian_capacity_pdf, prop1_capacity_law, prop2_bounds

logger = logging.getLogger(__name__)

COVARIANCE_KINDS = ("sinc", "allones", "identity")
DEFAULT_CHUNK_SIZE = 1000
# Histogram range in estimated standard deviations on each side of the mean.
HIST_SPAN = 6.0
MAX_SEED = 2**64 - 1


# ==================== CONFIGURATION ====================


@dataclass(frozen=True)
class Scenario:
    """
    Everything needed to build a SystemConfig for any IRS size.

    gain_* are the dimensionless products α_d·A_M, α_s·A_0 and α_r·A_0.
    Explicit alpha_* values win over gains; a link budget wins over both.
    """

    wavelength: float
    bs: ArrayGeometry
    irs_nx: int
    irs_ny: int
    scaling: IrsScaling
    kappa_r: float
    rho: float
    aoa_irs: Angles
    aod_irs: Angles
    aod_bs: Angles
    gain_d: float = 1.0
    gain_s: float = 1.0
    gain_r: float = 1.0
    alpha_d: float | None = None
    alpha_s: float | None = None
    alpha_r: float | None = None
    area_m: float | None = None
    area_n: float | None = None
    covariance: str = "sinc"
    link_budget: object = None

    def __post_init__(self):
        if self.covariance not in COVARIANCE_KINDS:
            raise ConfigError(f"covariance must be one of {', '.join(COVARIANCE_KINDS)}, got {self.covariance!r}")

    def system(self, nx=None, ny=None):
        nx = self.irs_nx if nx is None else nx
        ny = self.irs_ny if ny is None else ny
        _, spacing = element_area(self.scaling, nx * ny)
        irs = ArrayGeometry(nx, ny, spacing, spacing)
        area_m = self.bs.area if self.area_m is None else self.area_m
        cfg = SystemConfig(
            bs=self.bs,
            irs=irs,
            wavelength=self.wavelength,
            alpha_d=self.alpha_d if self.alpha_d is not None else self.gain_d / area_m,
            alpha_s=self.alpha_s if self.alpha_s is not None else self.gain_s / self.scaling.a0,
            alpha_r=self.alpha_r if self.alpha_r is not None else self.gain_r / self.scaling.a0,
            kappa_r=self.kappa_r,
            rho=self.rho,
            aoa_irs=self.aoa_irs,
            aod_irs=self.aod_irs,
            aod_bs=self.aod_bs,
            area_m=self.area_m,
            area_n=self.area_n,
        )
        if self.link_budget is not None:
            cfg = self.link_budget.apply(cfg)
        return cfg

    def covariance_for(self, cfg):
        if self.covariance == "sinc":
            return sinc_covariance(cfg.irs, cfg.wavelength)
        if self.covariance == "allones":
            return allones_covariance(cfg.n)
        return identity_covariance(cfg.n)


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: Scenario
    trials: int
    master_seed: int
    sweep: tuple = ()
    outputs: Path = field(default_factory=lambda: Path("results"))
    corrected: bool = False
    bins: int = 140

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= self.master_seed <= MAX_SEED:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.master_seed!r}")
        if self.bins < 1:
            raise ConfigError(f"bins must be positive, got {self.bins!r}")
        for n in self.sweep:
            if int(n) != n or n < 1:
                raise ConfigError(f"Sweep entry {n!r} must be a positive integer")
            side = math.isqrt(n)
            if side * side != n:
                raise ConfigError(f"Sweep entry {n} is not a perfect square")

    @property
    def sweep_sides(self):
        return [math.isqrt(n) for n in self.sweep]


# ==================== RUNNING STATISTICS ====================


@dataclass(frozen=True)
class RunningStats:
    """Count, mean, sum of squared deviations and extremes of a sample."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0
    min: float = math.inf
    max: float = -math.inf

    @classmethod
    def from_samples(cls, samples):
        samples = np.asarray(samples, dtype=float).ravel()
        if samples.size == 0:
            return cls()
        mean = float(np.mean(samples))
        return cls(
            count=int(samples.size),
            mean=mean,
            m2=float(np.sum((samples - mean) ** 2)),
            min=float(np.min(samples)),
            max=float(np.max(samples)),
        )

    def merge(self, other):
        if other.count == 0:
            return self
        if self.count == 0:
            return other
        count = self.count + other.count
        delta = other.mean - self.mean
        return RunningStats(
            count=count,
            mean=self.mean + delta * other.count / count,
            m2=self.m2 + other.m2 + delta * delta * self.count * other.count / count,
            min=min(self.min, other.min),
            max=max(self.max, other.max),
        )

    @property
    def variance_defined(self):
        return self.count > 1

    @property
    def variance(self):
        """Unbiased sample variance; 0 when fewer than two samples."""
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def std(self):
        return math.sqrt(self.variance)


# ==================== TRIAL WORK ====================


class CapacityTrial:
    """Full-channel draw per trial at fixed phases; yields C (or Γ)."""

    def __init__(self, cfg, cov, beta=None, quantity="capacity"):
        if quantity not in ("capacity", "gamma"):
            raise ConfigError(f"Unknown trial quantity {quantity!r}")
        self.cfg = cfg
        self.cov = cov
        self.quantity = quantity
        self.beta = cfg.beta_star() if beta is None else np.asarray(beta, dtype=float)
        self.t_matrix = los_bs_irs(cfg)
        # Decompose once here so pool workers inherit the square root.
        cov.sqrt_factor

    def sample_batch(self, master_seed, indices):
        h_d = np.array(
            [sample_direct(self.cfg, streams.trial_rng(master_seed, index, streams.DIRECT)) for index in indices]
        )
        h_r = np.array(
            [
                sample_reflect(self.cfg, self.cov, streams.trial_rng(master_seed, index, streams.REFLECT))
                for index in indices
            ]
        )
        h = end_to_end(self.cfg, h_d, self.t_matrix, h_r, self.beta)
        gamma, cap = capacity(self.cfg, h)
        return gamma if self.quantity == "gamma" else cap


class GammaTrial:
    """Decomposed two-variable draw of Γ per trial."""

    def __init__(self, params, cfg):
        self.params = params
        self.cfg = cfg

    def sample_batch(self, master_seed, indices):
        return np.array(
            [
                sample_gamma_decomposed(self.params, self.cfg, streams.trial_rng(master_seed, index, streams.DECOMPOSED))
                for index in indices
            ]
        )


def _run_work(work, master_seed, indices):
    if hasattr(work, "sample_batch"):
        return np.asarray(work.sample_batch(master_seed, indices), dtype=float)
    return np.array([work(master_seed, int(index)) for index in indices], dtype=float)


_worker_state = {}


def _install_work(work, master_seed):
    _worker_state["work"] = work
    _worker_state["seed"] = master_seed


def _run_chunk(bounds):
    start, stop = bounds
    return _run_work(_worker_state["work"], _worker_state["seed"], range(start, stop))


def _chunks(trials, chunk_size, offset):
    if chunk_size < 1:
        raise ConfigError(f"chunk size must be positive, got {chunk_size}")
    return [(offset + s, offset + min(s + chunk_size, trials)) for s in range(0, trials, chunk_size)]


def map_trials(trials, master_seed, work, workers=1, chunk_size=DEFAULT_CHUNK_SIZE, offset=0):
    """
    Per-chunk sample arrays for trial indices offset..offset+trials-1, in order.

    Chunk boundaries depend only on ``chunk_size``; the worker count never
    changes which trials share a chunk.
    """
    if trials < 1:
        raise ConfigError(f"trials must be positive, got {trials}")
    chunks = _chunks(trials, chunk_size, offset)
    logger.info("Running %d trials in %d chunks on %d worker(s)", trials, len(chunks), workers)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_install_work, initargs=(work, master_seed)
        ) as pool:
            return list(pool.map(_run_chunk, chunks))
    return [_run_work(work, master_seed, range(start, stop)) for start, stop in chunks]


def merge_chunks(chunks):
    stats = RunningStats()
    for chunk in chunks:
        stats = stats.merge(RunningStats.from_samples(chunk))
    return stats


def parallel_trials(trials, master_seed, work, workers=1, chunk_size=DEFAULT_CHUNK_SIZE):
    """RunningStats of ``work`` over trials 0..trials-1, independent of ``workers``."""
    stats = merge_chunks(map_trials(trials, master_seed, work, workers, chunk_size))
    logger.info("Finished %d trials: mean=%.6g variance=%.6g", stats.count, stats.mean, stats.variance)
    return stats


# ==================== EXPERIMENTS ====================


def histogram_rows(samples, stats, bins, law, corrected=False):
    """Rows (bin_center, count, analytic_pdf_scaled) over mean ± 6σ_est."""
    spread = stats.std if stats.std > 0 else 0.5 / HIST_SPAN
    lo = stats.mean - HIST_SPAN * spread
    hi = stats.mean + HIST_SPAN * spread
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(np.clip(samples, lo, hi), bins=edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    width = edges[1] - edges[0]
    overlay = stats.count * width * gaussian_capacity_pdf(law, centers, corrected)
    return list(zip(centers, counts, overlay))


def run_histogram(cfg, workers=1, chunk_size=DEFAULT_CHUNK_SIZE):
    """Capacity histogram of the scenario at the phase rule; writes histogram.csv."""
    system = cfg.scenario.system()
    cov = cfg.scenario.covariance_for(system)
    chunks = map_trials(cfg.trials, cfg.master_seed, CapacityTrial(system, cov), workers, chunk_size)
    stats = merge_chunks(chunks)
    samples = np.concatenate(chunks)
    law = prop1_capacity_law(system, cov)
    rows = histogram_rows(samples, stats, cfg.bins, law, cfg.corrected)
    write_csv(cfg.outputs / "histogram.csv", ["bin_center", "count", "analytic_pdf_scaled"], rows)
    logger.info(
        "Histogram N=%d: sample mean %.6f (analytic %.6f), variance %.6g (analytic %.6g)",
        system.n, stats.mean, law.mu_c, stats.variance, law.spread(cfg.corrected) ** 2,
    )
    return rows, stats


def run_sweep(cfg, workers=1, chunk_size=DEFAULT_CHUNK_SIZE, ceiling=(1.9, 0.25), floor_offset=None):
    """
    Monte Carlo and analytic capacity statistics over the square IRS sizes
    of ``cfg.sweep``; writes sweep.csv.

    ``ceiling`` is (c, u) of the variance ceiling c·N^-(1-u).
    """
    if not cfg.sweep:
        raise ConfigError("The scenario has no sweep grid (set sweep or sweep_side)")
    c_coef, u = ceiling
    rows = []
    for point, side in enumerate(cfg.sweep_sides):
        system = cfg.scenario.system(side, side)
        cov = cfg.scenario.covariance_for(system)
        chunks = map_trials(
            cfg.trials, cfg.master_seed, CapacityTrial(system, cov), workers, chunk_size, offset=point * cfg.trials
        )
        stats = merge_chunks(chunks)
        law = prop1_capacity_law(system, cov)
        if system.kappa_r > 0 and cfg.scenario.scaling.q < 1:
            mean_floor, shape = prop2_bounds(system, cfg.scenario.scaling, (None, u), system.n, floor_offset)
        else:
            mean_floor, shape = math.nan, float(system.n) ** (-(1 - u))
        rows.append((system.n, stats.mean, stats.variance, law.mu_c, law.sigma2_c, mean_floor, c_coef * shape))
        logger.info("Sweep N=%d: mc_mean=%.6f mu_C=%.6f", system.n, stats.mean, law.mu_c)
    write_csv(
        cfg.outputs / "sweep.csv",
        ["N", "mc_mean", "mc_var", "mu_C", "sigma2_C", "mean_floor", "var_ceiling"],
        rows,
    )
    return rows
