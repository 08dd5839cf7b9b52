import math

from hardening.export import write_csv
from hardening.management.base import SimulatorCommand
from hardening.statistics import calibrated_floor_offset, prop1_capacity_law, prop2_bounds


class Command(SimulatorCommand):
    help = "Analytic capacity laws, mean floor and variance ceiling over square IRS sizes (laws.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--ceiling-c", type=float, default=1.9, help="Constant c of the variance ceiling")
        parser.add_argument("--ceiling-u", type=float, default=0.25, help="Eigenvalue exponent u of the ceiling")
        parser.add_argument("--calibrated", action="store_true", help="Fit the floor offset at the smallest N")

    def run(self, options):
        config = self._load(options)
        scenario = config.scenario
        c_coef = options["ceiling_c"]
        u = options["ceiling_u"]
        grid = self._sweep_or_default(config)
        with_floor = scenario.kappa_r > 0 and scenario.scaling.q < 1
        offset = None
        if options["calibrated"] and with_floor:
            smallest = min(grid)
            side = math.isqrt(smallest)
            system = scenario.system(side, side)
            law = prop1_capacity_law(system, scenario.covariance_for(system))
            offset = calibrated_floor_offset(law.mu_c, smallest, scenario.scaling.q)
        rows = []
        for n in grid:
            side = math.isqrt(n)
            system = scenario.system(side, side)
            law = prop1_capacity_law(system, scenario.covariance_for(system))
            if with_floor:
                floor, shape = prop2_bounds(system, scenario.scaling, (None, u), n, offset)
            else:
                floor, shape = math.nan, float(n) ** (-(1 - u))
            rows.append((n, law.mu_c, law.sigma2_c, law.sigma2_c_hat, floor, c_coef * shape))
        self._wrote(
            write_csv(
                config.outputs / "laws.csv",
                ["N", "mu_C", "sigma2_C", "sigma2_C_hat", "mean_floor", "var_ceiling"],
                rows,
            )
        )
