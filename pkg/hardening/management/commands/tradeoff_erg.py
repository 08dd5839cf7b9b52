from hardening.export import write_csv
from hardening.management.base import SimulatorCommand
from hardening.tradeoff import erg_tradeoff


class Command(SimulatorCommand):
    help = "Minimal transmit antennas for an ergodic capacity target over square IRS sizes (tradeoff_erg.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--cbar", type=float, required=True, help="Target ergodic capacity in bits")

    def run(self, options):
        config = self._load(options)
        points = erg_tradeoff(config.scenario, self._sweep_or_default(config), options["cbar"])
        rows = [(p.n, p.m_real, p.m_min) for p in points]
        self._wrote(write_csv(config.outputs / "tradeoff_erg.csv", ["N", "m_real", "m_min"], rows))
