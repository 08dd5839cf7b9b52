from django.conf import settings

from hardening.configfile import load_experiment, scenario_from_values

CONFIG_DIR = settings.BASE_DIR / "configs"


def baseline(**values):
    """Baseline scenario with string-valued overrides, as a scenario file would give them."""
    return scenario_from_values({key: str(value) for key, value in values.items()}, source="<test>")


def shipped(name, **overrides):
    return load_experiment(CONFIG_DIR / name, **overrides)
