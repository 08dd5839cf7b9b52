import numpy as np

from hardening.analytics import capacity_density, exact_density, snr_law_params
from hardening.export import write_csv
from hardening.management.base import SimulatorCommand


class Command(SimulatorCommand):
    help = "Exact density of the SNR gain and of the capacity at the phase rule (density_gamma.csv, density_capacity.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--points", type=int, default=200, help="Grid points per curve")
        parser.add_argument("--span", type=float, default=6.0, help="Grid half-width in standard deviations")

    def run(self, options):
        config = self._load(options)
        system = config.scenario.system()
        cov = config.scenario.covariance_for(system)
        params = snr_law_params(system, cov)
        points = max(options["points"], 2)
        span = options["span"]

        lo = max(params.mu_gamma - span * params.sigma_gamma, 0.0)
        hi = params.mu_gamma + span * params.sigma_gamma
        gammas = np.linspace(lo, hi, points)
        pdf = exact_density(params, system, gammas)
        self._wrote(write_csv(config.outputs / "density_gamma.csv", ["gamma", "pdf"], zip(gammas, pdf)))

        scale = system.rho * system.m
        caps = np.linspace(np.log2(1 + scale * lo), np.log2(1 + scale * hi), points)
        pdf_c = capacity_density(params, system, caps)
        self._wrote(write_csv(config.outputs / "density_capacity.csv", ["c", "pdf_capacity"], zip(caps, pdf_c)))
