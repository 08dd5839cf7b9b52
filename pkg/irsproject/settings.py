"""
Django settings for the irsproject project.

The project hosts the ``hardening`` app: a numerics library for IRS-aided
MISO channel hardening plus the management commands that run its
experiments. There are no models, no database and no HTTP surface; Django
provides settings, logging configuration, the command-line entry point and
the test runner.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def load_env_file(env_path):
    """Load key=value pairs from .env into os.environ if not already set."""
    if not env_path.exists():
        return

    for line in env_path.read_text(encoding='utf-8').splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith('#') or '=' not in stripped:
            continue
        key, value = stripped.split('=', 1)
        os.environ.setdefault(key.strip(), value.strip().strip('"').strip("'"))


load_env_file(BASE_DIR / '.env')


# Nothing is signed or served; the key only satisfies Django's startup checks.
SECRET_KEY = os.getenv("SECRET_KEY", "irs-hardening-local-development-key")

DEBUG = os.getenv("DEBUG", "False").lower() in ("1", "true", "yes")

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    "hardening",
]

DATABASES = {}

# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# ==================== SIMULATOR ====================

# Worker processes used by Monte Carlo commands when --workers is not given.
HARDENING_WORKERS = int(os.getenv("HARDENING_WORKERS", "1"))

# Directory that receives CSV output when --out is not given.
HARDENING_OUTPUT_DIR = Path(os.getenv("HARDENING_OUTPUT_DIR", BASE_DIR / "results"))

# Master seed used when neither the scenario file nor --seed sets one.
HARDENING_SEED = int(os.getenv("HARDENING_SEED", "20240101"))

HARDENING_HIST_BINS = int(os.getenv("HARDENING_HIST_BINS", "140"))

# Trials per work unit. Part of the reproducibility contract: results depend
# on it, the worker count does not.
HARDENING_CHUNK_SIZE = int(os.getenv("HARDENING_CHUNK_SIZE", "1000"))

HARDENING_LOG_LEVEL = os.getenv("HARDENING_LOG_LEVEL", "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "hardening": {
            "handlers": ["console"],
            "level": HARDENING_LOG_LEVEL,
            "propagate": False,
        },
    },
}
