#!/usr/bin/env python3
"""Run every figure preset into runs/<name>/ (optionally at reduced scale).

Full scale reproduces the published protocols and can take tens of minutes;
--quick shrinks sweep counts for a smoke run that still exercises every code
path and produces a renderable gallery tree.
"""

import argparse
import sys

from dqchaos.cli import main as cli_main
from dqchaos.presets import PRESETS

QUICK_OVERRIDES = {
    "fig2a": ["--set", "damping_step=0.005", "--set", "spin=4.0"],
    "fig2b": ["--set", "k0_count=8", "--set", "ginibre_matrices=3"],
    "fig3": ["--set", "n=30", "--set", "boundary_resolution=128"],
    "fig4": ["--set", "n=150", "--set", "realizations=3", "--set", "n_points=20000"],
    "fig5": ["--set", "n=30"],
    "fig6": ["--set", "a_count=4", "--set", "t_count=4", "--set", "qle_periods=30",
             "--set", "mf_periods=60", "--set", "n_max=30"],
    "fig7": ["--set", "k0_count=12", "--set", "ginibre_matrices=3"],
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--quick", action="store_true", help="reduced-scale smoke run")
    ap.add_argument("--only", nargs="*", default=None, help="subset of preset names")
    args = ap.parse_args()

    names = args.only or list(PRESETS)
    worst = 0
    for name in names:
        preset = PRESETS[name]
        argv = ["run", preset["experiment"], "--preset", name,
                "--seed", str(args.seed), "--workers", str(args.workers),
                "--out", f"{args.out}/{name}"]
        if args.quick:
            argv += QUICK_OVERRIDES.get(name, [])
        print(f"== {name}: dqchaos " + " ".join(argv))
        code = cli_main(argv)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
