"""
Spatial covariance of the IRS->user scattered component.

Responsibilities:
- Sinc (isotropic scattering), all-ones and identity covariance builders
- Lazy spectral data: clamped eigenvalues and a PSD square root
- Rayleigh quotients and quadratic forms
- Element-area scaling of the IRS with its size
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import linalg

from hardening.errors import ConfigError, DimensionError, NumericalError
from hardening.geometry import ArrayGeometry

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
# Eigenvalues in [-NEGATIVE_TOL * λ_max, 0) are round-off and get clamped.
NEGATIVE_TOL = 1e-10


def _check_hermitian(matrix):
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Covariance must be square, got shape {matrix.shape}")
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    if np.max(np.abs(matrix - matrix.conj().T), initial=0.0) > HERMITIAN_TOL * scale:
        raise NumericalError("Covariance matrix is not Hermitian")


def _decompose(matrix):
    """Ascending eigenpairs of a Hermitian matrix with round-off negatives clamped."""
    if not np.any(matrix.imag):
        eigvals, eigvecs = linalg.eigh(matrix.real)
    else:
        eigvals, eigvecs = linalg.eigh(matrix)
    top = eigvals[-1]
    floor = -NEGATIVE_TOL * max(top, 0.0)
    if eigvals[0] < floor:
        raise NumericalError(
            f"Covariance has a negative eigenvalue {eigvals[0]:.3e} "
            f"(largest {top:.3e}); the matrix is not positive semidefinite"
        )
    clamped = int(np.count_nonzero(eigvals < 0))
    if clamped:
        logger.debug("Clamped %d round-off eigenvalues to zero", clamped)
    return np.clip(eigvals, 0.0, None), eigvecs, clamped


@dataclass(frozen=True, eq=False)
class CovarianceModel:
    """Hermitian PSD matrix R with unit diagonal; spectral data computed on demand."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        _check_hermitian(matrix)
        if not np.allclose(np.diag(matrix).real, 1.0, rtol=0, atol=1e-9):
            raise NumericalError("Covariance diagonal must be all ones")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def size(self):
        return self.matrix.shape[0]

    @cached_property
    def _spectrum(self):
        eigvals, eigvecs, clamped = _decompose(self.matrix)
        logger.debug("Decomposed %dx%d covariance, lambda_max=%.6g", self.size, self.size, eigvals[-1])
        return eigvals, eigvecs, clamped

    @cached_property
    def eigenvalues(self):
        """Clamped eigenvalues, descending."""
        return self._spectrum[0][::-1].copy()

    @cached_property
    def sqrt_factor(self):
        eigvals, eigvecs, _ = self._spectrum
        return (eigvecs * np.sqrt(eigvals)).astype(complex)

    @property
    def lambda_max(self):
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self):
        return float(self.eigenvalues[-1])

    def condition(self):
        """Return (λ_min, λ_max, number of round-off eigenvalues clamped to zero)."""
        return self.lambda_min, self.lambda_max, self._spectrum[2]

    def quadratic_form(self, v):
        """vᴴRv as a real number."""
        v = _as_vector(v, self.size)
        return float(np.real(np.vdot(v, self.matrix @ v)))


def _as_vector(v, n):
    v = np.asarray(v, dtype=complex)
    if v.shape != (n,):
        raise DimensionError(f"Vector has shape {v.shape}, expected ({n},)")
    return v


def _check_wavelength(wavelength):
    if not math.isfinite(wavelength) or wavelength <= 0:
        raise ConfigError(f"Wavelength must be positive, got {wavelength!r}")


def sinc_covariance(irs, wavelength):
    """[R]_nn' = sinc((2/λ)·distance between elements n and n')."""
    _check_wavelength(wavelength)
    i, j = irs.grid()
    dist_x = irs.dx * (i[:, None] - i[None, :])
    dist_y = irs.dy * (j[:, None] - j[None, :])
    distance = np.hypot(dist_x, dist_y)
    return CovarianceModel(np.sinc(2.0 * distance / wavelength))


def allones_covariance(n):
    """Rank-one extreme R = 1_N."""
    if n < 1:
        raise ConfigError(f"Covariance size must be at least 1, got {n}")
    return CovarianceModel(np.ones((n, n)))


def identity_covariance(n):
    if n < 1:
        raise ConfigError(f"Covariance size must be at least 1, got {n}")
    return CovarianceModel(np.eye(n))


def psd_sqrt(cov):
    """Return S with S·Sᴴ = R, from a CovarianceModel or a raw Hermitian matrix."""
    if isinstance(cov, CovarianceModel):
        return cov.sqrt_factor
    matrix = np.asarray(cov, dtype=complex)
    _check_hermitian(matrix)
    eigvals, eigvecs, _ = _decompose(matrix)
    return (eigvecs * np.sqrt(eigvals)).astype(complex)


def rayleigh_quotient(cov, v):
    v = _as_vector(v, cov.size)
    norm2 = float(np.real(np.vdot(v, v)))
    if norm2 == 0.0:
        raise ConfigError("Rayleigh quotient of the zero vector is undefined")
    return cov.quadratic_form(v) / norm2


def max_eigenvalue(matrix):
    """Largest eigenvalue of a Hermitian matrix without the full spectrum."""
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    if np.iscomplexobj(matrix) and not np.any(matrix.imag):
        matrix = matrix.real
    top = linalg.eigh(matrix, eigvals_only=True, subset_by_index=[n - 1, n - 1])
    return float(top[0])


# ==================== AREA SCALING ====================


@dataclass(frozen=True)
class IrsScaling:
    """Per-element area A_N = a0 / N^q."""

    a0: float
    q: float

    def __post_init__(self):
        if not math.isfinite(self.a0) or self.a0 <= 0:
            raise ConfigError(f"Reference element area must be positive, got {self.a0!r}")
        if not 0.0 <= self.q <= 1.0:
            raise ConfigError(f"Scaling exponent q must lie in [0, 1], got {self.q!r}")

    @classmethod
    def half_wavelength(cls, wavelength, q=0.0):
        """Reference pitch of λ/2, so q=0 keeps half-wavelength spacing."""
        return cls((wavelength / 2) ** 2, q)

    def total_area(self, n):
        return element_area(self, n)[0] * n


def element_area(scaling, n):
    """Return (a_n, d): element area and pitch of square elements for an N-element IRS."""
    if n < 1:
        raise ConfigError(f"IRS size must be at least 1, got {n}")
    a_n = scaling.a0 / n**scaling.q
    return a_n, math.sqrt(a_n)


def scaled_square_irs(scaling, side):
    """Square side×side IRS whose pitch follows the area scaling law."""
    _, spacing = element_area(scaling, side * side)
    return ArrayGeometry.square(side, spacing)
