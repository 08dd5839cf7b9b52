from hardening.harness import run_sweep
from hardening.management.base import SimulatorCommand
from hardening.statistics import calibrated_floor_offset, prop1_capacity_law


class Command(SimulatorCommand):
    help = "Monte Carlo and analytic capacity mean/variance over square IRS sizes (sweep.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--ceiling-c", type=float, default=1.9, help="Constant c of the variance ceiling")
        parser.add_argument("--ceiling-u", type=float, default=0.25, help="Eigenvalue exponent u of the ceiling")
        parser.add_argument(
            "--calibrated",
            action="store_true",
            help="Fit the mean-floor offset to the smallest sweep point instead of the link-budget value",
        )

    def run(self, options):
        config = self._load(options)
        offset = None
        if options["calibrated"] and config.sweep:
            side = min(config.sweep_sides)
            system = config.scenario.system(side, side)
            law = prop1_capacity_law(system, config.scenario.covariance_for(system))
            offset = calibrated_floor_offset(law.mu_c, system.n, config.scenario.scaling.q)
        run_sweep(
            config,
            workers=self._workers(options),
            chunk_size=self._chunk_size(),
            ceiling=(options["ceiling_c"], options["ceiling_u"]),
            floor_offset=offset,
        )
        self._wrote(config.outputs / "sweep.csv")
