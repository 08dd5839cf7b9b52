from hardening.export import write_csv
from hardening.management.base import SimulatorCommand
from hardening.tradeoff import out_tradeoff


class Command(SimulatorCommand):
    help = "Minimal transmit antennas for a rate target at a given outage probability (tradeoff_out.csv)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--rate", type=float, required=True, help="Target rate in bits")
        parser.add_argument("--pout", type=float, required=True, help="Outage probability in (0, 0.5]")

    def run(self, options):
        config = self._load(options)
        points = out_tradeoff(config.scenario, self._sweep_or_default(config), options["rate"], options["pout"])
        rows = [(p.n, p.m_real, p.m_min) for p in points]
        self._wrote(write_csv(config.outputs / "tradeoff_out.csv", ["N", "m_real", "m_min"], rows))
