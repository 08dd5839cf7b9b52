from hardening.export import write_csv, write_spectrum_csv
from hardening.fitting import lambda_max_series, power_law_fit
from hardening.management.base import SimulatorCommand


class Command(SimulatorCommand):
    help = "Largest sinc-covariance eigenvalue over square IRS sizes and its power-law fit (eigs.csv, eigs_fit.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            "--spectrum",
            action="store_true",
            help="Also dump the full spectrum of the scenario's own IRS covariance (spectrum.csv)",
        )

    def run(self, options):
        config = self._load(options)
        scenario = config.scenario
        grid = self._sweep_or_default(config)
        series = lambda_max_series(grid, scenario.wavelength, scenario.scaling.q)
        fit = power_law_fit(series)

        self._wrote(write_csv(config.outputs / "eigs.csv", ["N", "lambda_max"], series))
        self._wrote(write_csv(config.outputs / "eigs_fit.csv", ["a", "u", "residual"], [(fit.a, fit.u, fit.residual)]))
        self.stdout.write(f"lambda_max ~ {fit.a:.4f} * N^{fit.u:.4f} (log RMS residual {fit.residual:.3g})")

        if options["spectrum"]:
            system = scenario.system()
            path = write_spectrum_csv(scenario.covariance_for(system), config.outputs / "spectrum.csv")
            self._wrote(path)
