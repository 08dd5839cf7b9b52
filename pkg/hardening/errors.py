"""Exception hierarchy for the hardening simulator.

Management commands map these onto process exit codes:
ConfigError and DimensionError exit with 2, NumericalError with 3,
OutputError with 1.
"""


class HardeningError(Exception):
    """Base class for every error raised by the simulator."""

    exit_code = 1


class ConfigError(HardeningError, ValueError):
    """Invalid parameter, scenario file entry or violated input invariant."""

    exit_code = 2


class DimensionError(HardeningError, ValueError):
    """Vector or matrix shapes that do not fit together."""

    exit_code = 2


class NumericalError(HardeningError, ArithmeticError):
    """Broken covariance, failed root bracket or unreachable target."""

    exit_code = 3


class OutputError(HardeningError, OSError):
    """Result file could not be written."""

    exit_code = 1

    def __init__(self, path, reason):
        self.path = path
        super().__init__(f"Could not write {path}: {reason}")
