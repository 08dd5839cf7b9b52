"""
Planar array geometry for the BS and the IRS.

Responsibilities:
- Array layouts and arrival/departure angles as immutable value types
- Element index maps (1-based k to the (i, j) grid position)
- Exponent functions, array responses and the angle-only phase rule
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from hardening.errors import ConfigError, DimensionError

logger = logging.getLogger(__name__)

# Relative slack allowed when checking spacing against half a wavelength.
_SPACING_SLACK = 1e-12


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform rectangular array: nx columns, ny rows, spacings in meters."""

    nx: int
    ny: int
    dx: float
    dy: float

    def __post_init__(self):
        for name in ("nx", "ny"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        for name in ("dx", "dy"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{name} must be a positive length, got {value!r}")

    @classmethod
    def square(cls, side, spacing):
        return cls(side, side, spacing, spacing)

    @property
    def size(self):
        return self.nx * self.ny

    @property
    def area(self):
        """Per-element area (A_M for the BS, A_N for the IRS)."""
        return self.dx * self.dy

    def check_spacing(self, wavelength):
        """Reject layouts whose spacing exceeds half a wavelength."""
        limit = 0.5 * wavelength * (1 + _SPACING_SLACK)
        if self.dx > limit or self.dy > limit:
            raise ConfigError(
                f"Element spacing ({self.dx:g}, {self.dy:g}) m exceeds half of "
                f"the {wavelength:g} m wavelength"
            )

    def grid(self):
        """Return (i, j) index arrays for elements k = 1..size."""
        k = np.arange(self.size)
        return k % self.nx, k // self.nx


@dataclass(frozen=True)
class Angles:
    """Azimuth and elevation in radians."""

    azimuth: float
    elevation: float

    def __post_init__(self):
        if not (math.isfinite(self.azimuth) and math.isfinite(self.elevation)):
            raise ConfigError(f"Angles must be finite, got ({self.azimuth!r}, {self.elevation!r})")


def _check_wavelength(wavelength):
    if not math.isfinite(wavelength) or wavelength <= 0:
        raise ConfigError(f"Wavelength must be positive, got {wavelength!r}")


def index_maps(k, nx):
    """Map a 1-based element index to its 0-based (i, j) grid position."""
    if k < 1:
        raise ConfigError(f"Element index must be at least 1, got {k}")
    if nx < 1:
        raise ConfigError(f"Row length must be at least 1, got {nx}")
    return (k - 1) % nx, (k - 1) // nx


def exponent(geom, k, ang):
    """Path-length offset of element k towards direction ``ang``, in meters."""
    if not 1 <= k <= geom.size:
        raise DimensionError(f"Element index {k} outside [1, {geom.size}]")
    i, j = index_maps(k, geom.nx)
    return (
        i * geom.dx * math.cos(ang.elevation) * math.sin(ang.azimuth)
        + j * geom.dy * math.sin(ang.elevation)
    )


def exponent_vector(geom, ang):
    """Vectorised ``exponent`` over all elements."""
    i, j = geom.grid()
    return (
        i * geom.dx * np.cos(ang.elevation) * np.sin(ang.azimuth)
        + j * geom.dy * np.sin(ang.elevation)
    )


def steering_phase(geom, ang, wavelength):
    """(2π/λ)·exponent for every element."""
    _check_wavelength(wavelength)
    return (2 * np.pi / wavelength) * exponent_vector(geom, ang)


def array_response(geom, ang, wavelength):
    return np.exp(1j * steering_phase(geom, ang, wavelength))


def optimal_phase_shifts(irs, aoa, aod_user, wavelength):
    """
    Angle-only phase rule that co-phases the BS->IRS arrival with the
    IRS->user departure.

    With these shifts ḡ_n·exp(-jβ_n) equals the conjugate of the IRS->user
    LoS response, so every term of the LoS reflection sum is real and one.
    """
    return steering_phase(irs, aoa, wavelength) + steering_phase(irs, aod_user, wavelength)


def phase_matrix(beta):
    """Diagonal of Φ(β) = diag(exp(-jβ_n))."""
    return np.exp(-1j * np.asarray(beta, dtype=float))


def los_alignment(irs, aoa, aod_user, wavelength, beta):
    """|ḡᵀΦ(β)h̄| for the IRS LoS responses: equals N at the phase rule."""
    g_bar = array_response(irs, aoa, wavelength)
    h_bar = array_response(irs, aod_user, wavelength)
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (irs.size,):
        raise DimensionError(f"Phase vector has shape {beta.shape}, expected ({irs.size},)")
    return float(abs(np.sum(g_bar * phase_matrix(beta) * h_bar)))
