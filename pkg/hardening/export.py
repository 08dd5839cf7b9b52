"""CSV output: RFC-4180 with CRLF line ends and 17 significant digits for floats."""

import csv
import logging
import math
import numbers
from pathlib import Path

from hardening.errors import OutputError

logger = logging.getLogger(__name__)


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def write_csv(path, header, rows):
    """Write ``rows`` under ``header`` to ``path``, creating parent directories."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\r\n")
            writer.writerow(header)
            count = 0
            for row in rows:
                writer.writerow([format_value(v) for v in row])
                count += 1
    except OSError as exc:
        raise OutputError(path, exc.strerror or exc) from exc
    logger.info("Wrote %d rows to %s", count, path)
    return path


def write_spectrum_csv(cov, path):
    """Dump the eigenvalues of a covariance model, descending."""
    return write_csv(path, ["index", "eigenvalue"], enumerate(cov.eigenvalues, start=1))
