"""
Shared plumbing for the simulator's management commands.

- Common flags: --config, --seed, --trials, --out, --workers
- Scenario loading with settings-backed defaults
- Mapping of simulator errors onto CommandError exit codes
"""

import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from hardening.configfile import experiment_from_values, load_experiment
from hardening.errors import HardeningError

logger = logging.getLogger(__name__)


class SimulatorCommand(BaseCommand):
    """Base class; subclasses implement ``run(options)``."""

    def add_arguments(self, parser):
        parser.add_argument("--config", help="Scenario file (key = value lines); baseline when omitted")
        parser.add_argument("--seed", type=int, help="Master seed (unsigned 64-bit)")
        parser.add_argument("--trials", type=int, help="Monte Carlo trials per point")
        parser.add_argument("--out", help="Output directory for CSV files")
        parser.add_argument("--workers", type=int, help="Worker processes for Monte Carlo work")

    def handle(self, *args, **options):
        try:
            self.run(options)
        except HardeningError as exc:
            logger.error("%s failed: %s", self.__class__.__module__.rsplit(".", 1)[-1], exc)
            raise CommandError(str(exc), returncode=exc.exit_code) from exc

    def run(self, options):
        raise NotImplementedError

    # ==================== HELPERS ====================

    def _load(self, options):
        """Build the ExperimentConfig from --config plus flag overrides."""
        overrides = {
            "seed": options.get("seed"),
            "trials": options.get("trials"),
            "outputs": options.get("out"),
            "bins": options.get("bins"),
            "default_seed": settings.HARDENING_SEED,
            "default_outputs": Path(settings.HARDENING_OUTPUT_DIR),
            "default_bins": settings.HARDENING_HIST_BINS,
        }
        if options.get("config"):
            return load_experiment(options["config"], **overrides)
        return experiment_from_values({}, source="<baseline>", **overrides)

    def _workers(self, options):
        workers = options.get("workers")
        if workers is None:
            workers = settings.HARDENING_WORKERS
        if workers < 1:
            raise CommandError("--workers must be at least 1", returncode=2)
        return workers

    def _chunk_size(self):
        return settings.HARDENING_CHUNK_SIZE

    def _sweep_or_default(self, config, default_sides=range(8, 37)):
        return config.sweep or tuple(side * side for side in default_sides)

    def _wrote(self, path):
        self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))
