"""Power-law fits of the largest covariance eigenvalue against IRS size."""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from hardening.covariance import max_eigenvalue, sinc_covariance
from hardening.errors import ConfigError
from hardening.geometry import ArrayGeometry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerLawFit:
    """y ≈ a·n^u; residual is the RMS of the log-domain misfit."""

    a: float
    u: float
    residual: float

    def predict(self, n):
        return self.a * np.asarray(n, dtype=float) ** self.u


def power_law_fit(points):
    """Ordinary least squares of log y on log n."""
    points = [(float(n), float(y)) for n, y in points]
    if len(points) < 2:
        raise ConfigError("A power-law fit needs at least two points")
    n, y = np.array(points).T
    if np.any(n <= 0) or np.any(y <= 0):
        raise ConfigError("Power-law fits need strictly positive data")
    log_n = np.log(n)
    design = np.column_stack([np.ones_like(log_n), log_n])
    (log_a, u), *_ = np.linalg.lstsq(design, np.log(y), rcond=None)
    misfit = np.log(y) - log_a - u * log_n
    return PowerLawFit(a=math.exp(log_a), u=float(u), residual=float(np.sqrt(np.mean(misfit**2))))


def _square_side(n):
    side = math.isqrt(int(n))
    if side * side != n or side < 1:
        raise ConfigError(f"IRS size {n} is not a perfect square")
    return side


def lambda_max_series(n_grid, wavelength, q=0.0):
    """λ_max of square sinc covariances with pitch (λ/2)/N^(q/2)."""
    series = []
    for n in n_grid:
        side = _square_side(n)
        spacing = (wavelength / 2) / n ** (q / 2)
        cov = sinc_covariance(ArrayGeometry.square(side, spacing), wavelength)
        series.append((n, max_eigenvalue(cov.matrix)))
    logger.debug("lambda_max series for q=%.3f: %s", q, series)
    return series


def _exponent_at(q, n_grid, wavelength):
    return power_law_fit(lambda_max_series(n_grid, wavelength, q)).u


def u_vs_q_sweep(q_grid, n_grid, wavelength, workers=1):
    """Return [(q, u)] where u is the fitted growth exponent of λ_max at scaling q."""
    q_grid = [float(q) for q in q_grid]
    for q in q_grid:
        if not 0 <= q <= 1:
            raise ConfigError(f"Scaling exponent q must lie in [0, 1], got {q}")
    n_grid = [int(n) for n in n_grid]
    for n in n_grid:
        _square_side(n)

    task = partial(_exponent_at, n_grid=n_grid, wavelength=wavelength)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            exponents = list(pool.map(task, q_grid))
    else:
        exponents = [task(q) for q in q_grid]
    for q, u in zip(q_grid, exponents):
        logger.info("q=%.3f -> u=%.6f", q, u)
    return list(zip(q_grid, exponents))
