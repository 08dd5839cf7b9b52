from hardening.harness import run_histogram
from hardening.management.base import SimulatorCommand


class Command(SimulatorCommand):
    help = "Monte Carlo capacity histogram at the phase rule with the Gaussian overlay (histogram.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--bins", type=int, help="Number of histogram bins (default 140)")

    def run(self, options):
        config = self._load(options)
        _, stats = run_histogram(config, workers=self._workers(options), chunk_size=self._chunk_size())
        self.stdout.write(
            f"trials={stats.count} mean={stats.mean:.6f} variance={stats.variance:.6g} "
            f"min={stats.min:.6f} max={stats.max:.6f}"
        )
        self._wrote(config.outputs / "histogram.csv")
