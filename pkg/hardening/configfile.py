"""
Scenario files.

Flat ``key = value`` text with ``#`` comments. Numbers may be written as
``pi`` or ``lambda`` literals such as ``2*pi/3`` or ``lambda/2``; angle
pairs are ``azimuth, elevation``; ``sweep_side = 8..36`` expands to the
square IRS sizes 64..1296.
"""

import logging
import math
import re
from pathlib import Path

from hardening.covariance import IrsScaling
from hardening.errors import ConfigError
from hardening.geometry import Angles, ArrayGeometry
from hardening.harness import ExperimentConfig, Scenario
from hardening.tradeoff import LinkBudget

logger = logging.getLogger(__name__)

DEFAULT_WAVELENGTH = 0.1

_SYMBOLIC = re.compile(
    r"^(?P<sign>-)?\s*(?:(?P<coef>[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*\*\s*)?"
    r"(?P<sym>pi|lambda)\s*(?:/\s*(?P<div>[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))?$"
)
_RANGE = re.compile(r"^(?P<lo>[0-9]+)\s*\.\.\s*(?P<hi>[0-9]+)$")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}

KNOWN_KEYS = {
    "wavelength",
    "bs_nx", "bs_ny", "bs_dx", "bs_dy",
    "irs_nx", "irs_ny", "irs_spacing0", "irs_q",
    "gain_d", "gain_s", "gain_r",
    "alpha_d", "alpha_s", "alpha_r",
    "area_m", "area_n",
    "kappa_r", "kappa_r_db",
    "rho",
    "aoa_irs", "aod_irs", "aod_bs",
    "covariance", "corrected",
    "trials", "seed", "bins",
    "sweep", "sweep_side",
    "alpha_ref", "alpha_ref_db", "d_s", "d_d", "d_r", "eps_s", "eps_d", "eps_r",
}
_BUDGET_KEYS = ("d_s", "d_d", "d_r", "eps_s", "eps_d", "eps_r")


def parse_config_text(text, source="<string>"):
    """Return the key/value pairs of a scenario file body."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key, value = stripped.split("=", 1)
        key = key.strip()
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = value.strip().strip('"').strip("'")
    unknown = sorted(set(values) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"{source}: unknown key(s) {', '.join(unknown)}")
    return values


def read_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read scenario file {path}: {exc.strerror or exc}") from exc
    return parse_config_text(text, source=str(path))


def parse_number(raw, wavelength=None):
    """Parse a float or a ``[-][k*]pi|lambda[/d]`` literal."""
    raw = raw.strip()
    try:
        return float(raw)
    except ValueError:
        pass
    match = _SYMBOLIC.match(raw)
    if not match:
        raise ValueError(f"not a number: {raw!r}")
    if match["sym"] == "pi":
        base = math.pi
    elif wavelength is None:
        raise ValueError("lambda is not available before the wavelength is set")
    else:
        base = wavelength
    value = base * float(match["coef"] or 1.0) / float(match["div"] or 1.0)
    return -value if match["sign"] else value


class _Reader:
    """Typed access to parsed values with file/key context on errors."""

    def __init__(self, values, source):
        self.values = values
        self.source = source
        self.wavelength = None

    def fail(self, key, reason):
        raise ConfigError(f"{self.source}: {key}: {reason}")

    def has(self, key):
        return key in self.values

    def number(self, key, default=None):
        if key not in self.values:
            if default is None:
                self.fail(key, "missing")
            return default
        try:
            value = parse_number(self.values[key], self.wavelength)
        except ValueError as exc:
            self.fail(key, str(exc))
        if not math.isfinite(value):
            self.fail(key, "must be finite")
        return value

    def optional_number(self, key):
        return self.number(key) if key in self.values else None

    def integer(self, key, default=None):
        if key not in self.values:
            return default
        try:
            return int(self.values[key])
        except ValueError:
            self.fail(key, f"not an integer: {self.values[key]!r}")

    def flag(self, key, default=False):
        if key not in self.values:
            return default
        raw = self.values[key].lower()
        if raw in _TRUE:
            return True
        if raw in _FALSE:
            return False
        self.fail(key, f"not a boolean: {self.values[key]!r}")

    def angles(self, key, default):
        if key not in self.values:
            return default
        parts = [p for p in self.values[key].split(",") if p.strip()]
        if len(parts) != 2:
            self.fail(key, "expected 'azimuth, elevation'")
        try:
            return Angles(parse_number(parts[0]), parse_number(parts[1]))
        except ValueError as exc:
            self.fail(key, str(exc))

    def sweep(self):
        if "sweep" in self.values and "sweep_side" in self.values:
            self.fail("sweep", "give either sweep or sweep_side, not both")
        if "sweep_side" in self.values:
            match = _RANGE.match(self.values["sweep_side"])
            if not match:
                self.fail("sweep_side", "expected a range like 8..36")
            lo, hi = int(match["lo"]), int(match["hi"])
            if lo < 1 or hi < lo:
                self.fail("sweep_side", f"empty or invalid range {lo}..{hi}")
            return tuple(side * side for side in range(lo, hi + 1))
        if "sweep" in self.values:
            try:
                return tuple(int(p) for p in self.values["sweep"].split(",") if p.strip())
            except ValueError:
                self.fail("sweep", "expected comma-separated integers")
        return ()


# Angle triple of the baseline scenario: BS->IRS arrival, IRS->user departure, BS departure.
BASELINE_ANGLES = (
    Angles(math.pi / 6, math.pi / 3),
    Angles(math.pi / 8, 2 * math.pi / 3),
    Angles(math.pi / 7, math.pi / 5),
)


def _link_budget(reader):
    present = [k for k in _BUDGET_KEYS + ("alpha_ref", "alpha_ref_db") if reader.has(k)]
    if not present:
        return None
    if reader.has("alpha_ref") and reader.has("alpha_ref_db"):
        reader.fail("alpha_ref", "give either alpha_ref or alpha_ref_db, not both")
    if reader.has("alpha_ref_db"):
        alpha_ref = 10 ** (reader.number("alpha_ref_db") / 10)
    else:
        alpha_ref = reader.number("alpha_ref")
    return LinkBudget(alpha_ref=alpha_ref, **{k: reader.number(k) for k in _BUDGET_KEYS})


def scenario_from_values(values, source="<string>"):
    reader = _Reader(values, source)
    wavelength = reader.number("wavelength", DEFAULT_WAVELENGTH)
    reader.wavelength = wavelength

    bs = ArrayGeometry(
        reader.integer("bs_nx", 2),
        reader.integer("bs_ny", 2),
        reader.number("bs_dx", wavelength / 2),
        reader.number("bs_dy", wavelength / 2),
    )
    spacing0 = reader.number("irs_spacing0", wavelength / 2)
    scaling = IrsScaling(spacing0**2, reader.number("irs_q", 0.0))

    if reader.has("kappa_r") and reader.has("kappa_r_db"):
        reader.fail("kappa_r", "give either kappa_r or kappa_r_db, not both")
    if reader.has("kappa_r_db"):
        kappa_r = 10 ** (reader.number("kappa_r_db") / 10)
    else:
        kappa_r = reader.number("kappa_r", 1.0)

    aoa, aod, aod_bs = BASELINE_ANGLES
    return Scenario(
        wavelength=wavelength,
        bs=bs,
        irs_nx=reader.integer("irs_nx", 8),
        irs_ny=reader.integer("irs_ny", 32),
        scaling=scaling,
        kappa_r=kappa_r,
        rho=reader.number("rho", 1.0),
        aoa_irs=reader.angles("aoa_irs", aoa),
        aod_irs=reader.angles("aod_irs", aod),
        aod_bs=reader.angles("aod_bs", aod_bs),
        gain_d=reader.number("gain_d", 1.0),
        gain_s=reader.number("gain_s", 1.0),
        gain_r=reader.number("gain_r", 1.0),
        alpha_d=reader.optional_number("alpha_d"),
        alpha_s=reader.optional_number("alpha_s"),
        alpha_r=reader.optional_number("alpha_r"),
        area_m=reader.optional_number("area_m"),
        area_n=reader.optional_number("area_n"),
        covariance=values.get("covariance", "sinc"),
        link_budget=_link_budget(reader),
    )


def experiment_from_values(values, source="<string>", seed=None, trials=None, outputs=None, bins=None,
                           default_seed=0, default_outputs=Path("results"), default_bins=140):
    """Build an ExperimentConfig; keyword overrides win over file values, which win over defaults."""
    reader = _Reader(values, source)
    scenario = scenario_from_values(values, source)
    config = ExperimentConfig(
        scenario=scenario,
        trials=trials if trials is not None else reader.integer("trials", 100_000),
        master_seed=seed if seed is not None else reader.integer("seed", default_seed),
        sweep=reader.sweep(),
        outputs=Path(outputs) if outputs is not None else Path(default_outputs),
        corrected=reader.flag("corrected"),
        bins=bins if bins is not None else reader.integer("bins", default_bins),
    )
    logger.debug("Loaded scenario from %s: %s", source, config)
    return config


def load_experiment(path, **overrides):
    return experiment_from_values(read_config(path), source=str(path), **overrides)
