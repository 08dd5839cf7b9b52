import numpy as np

from hardening.errors import ConfigError
from hardening.export import write_csv
from hardening.fitting import u_vs_q_sweep
from hardening.management.base import SimulatorCommand


class Command(SimulatorCommand):
    help = "Fitted eigenvalue growth exponent u against the area scaling exponent q (u_vs_q.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--q-step", type=float, default=0.1, help="Spacing of the q grid over [0, 1]")

    def run(self, options):
        config = self._load(options)
        step = options["q_step"]
        if not 0 < step <= 1:
            raise ConfigError(f"--q-step must lie in (0, 1], got {step}")
        q_grid = np.round(np.linspace(0.0, 1.0, int(round(1 / step)) + 1), 12)
        grid = self._sweep_or_default(config)
        pairs = u_vs_q_sweep(q_grid, grid, config.scenario.wavelength, workers=self._workers(options))
        self._wrote(write_csv(config.outputs / "u_vs_q.csv", ["q", "u"], pairs))
