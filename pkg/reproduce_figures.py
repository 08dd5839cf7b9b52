import os
import sys

import django


def reproduce_figures(workers=1):
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "irsproject.settings")
    django.setup()

    from django.conf import settings
    from django.core.management import call_command
    from django.core.management.base import CommandError

    configs = settings.BASE_DIR / "configs"
    out = settings.HARDENING_OUTPUT_DIR
    common = ["--workers", str(workers)]

    runs = [
        ("Capacity histogram", "hist", ["--config", configs / "baseline.conf", "--out", out / "histogram"]),
        ("Rank-one histogram", "hist", ["--config", configs / "rank_one.conf", "--out", out / "rank_one"]),
        ("Mean and variance over N", "sweep_n", ["--config", configs / "sweep.conf", "--out", out / "sweep"]),
        ("Largest eigenvalue fit", "fit_eigs", ["--config", configs / "sweep.conf", "--out", out / "eigs", "--spectrum"]),
        ("Growth exponent against q", "u_vs_q", ["--config", configs / "sweep.conf", "--out", out / "u_vs_q"]),
        ("Exact SNR density", "density", ["--config", configs / "baseline.conf", "--out", out / "density"]),
        ("Capacity laws", "laws", ["--config", configs / "sweep.conf", "--out", out / "laws"]),
        ("Ergodic trade-off, 1 bit", "tradeoff_erg", ["--config", configs / "tradeoff.conf", "--out", out / "erg_1", "--cbar", "1"]),
        ("Ergodic trade-off, 3 bits", "tradeoff_erg", ["--config", configs / "tradeoff.conf", "--out", out / "erg_3", "--cbar", "3"]),
        ("Outage trade-off, p=0.01", "tradeoff_out", ["--config", configs / "tradeoff.conf", "--out", out / "out_1e-2", "--rate", "3", "--pout", "0.01"]),
        ("Outage trade-off, p=0.001", "tradeoff_out", ["--config", configs / "tradeoff.conf", "--out", out / "out_1e-3", "--rate", "3", "--pout", "0.001"]),
    ]

    print(f"Writing results under {out}")
    failed = 0
    for label, command, args in runs:
        print(f"\n{label} ({command})...")
        try:
            call_command(command, *[str(a) for a in args], *common)
        except CommandError as exc:
            failed += 1
            print(f"  ✗ Failed: {exc}")
        else:
            print(f"  ✓ Done: {label}")

    print(f"\nCompleted {len(runs) - failed} of {len(runs)} runs")
    return failed


if __name__ == "__main__":
    sys.exit(1 if reproduce_figures(int(sys.argv[1]) if len(sys.argv) > 1 else 1) else 0)
