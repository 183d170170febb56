"""Batch runner: `dqchaos run|analyze|presets`.

`run` executes one experiment into an artifact directory containing
manifest.json (resolved config, tool version, seed), the experiment's data
CSVs, and summary.json with machine-readable pass/fail checks.  Identical
config and seed give byte-identical CSV payloads regardless of worker count
(the manifest timestamp is the only moving part).

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 invariant
violation (a self-check in summary.json failed).
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, serialize
from .experiments import RUNNERS
from .presets import PRESETS
from .spectra import (
    EigenSolverError,
    complex_spacing_ratios,
    dff,
    dsff,
    empirical_cdf,
    hermitian_spacing_ratios,
    nn_spacings,
    poisson_reference_I,
    sff,
    spectral_gap,
)

EXPERIMENTS = tuple(RUNNERS)

# typed defaults per experiment; config values are cast to these types
DEFAULTS: dict[str, dict] = {
    "ghs": {"mode": "oracle", "spin": 10.0, "precession": 2.0, "torsion": 10.0,
            "kick": 0.0, "damping": 0.1, "jump_convention": "matched",
            "damping_max": 0.4, "damping_step": 1e-3, "sector": "even",
            "k0_min": 10.0, "k0_max": 12.0, "k0_count": 20, "q_list": "2;6;12",
            "ginibre_matrices": 10},
    "random-lindblad": {"n": 8, "rank": 0, "alpha": 0.0, "basis": "matrix-units",
                        "realizations": 4},
    "lemon": {"n": 30, "model": "lindblad", "rank": 0, "alpha": 0.0,
              "basis": "matrix-units", "realizations": 2, "boundary_resolution": 128,
              "dilate": 1.05, "scale_mode": "N"},
    "diluted": {"n": 50, "d": 4, "p_list": "0.1;0.3;0.5;0.8"},
    "rpqc": {"n": 40, "k": 4, "tau": 10.0, "eps_list": "0.0;0.2;0.5;0.9"},
    "csr": {"source": "poisson", "n": 300, "realizations": 1, "n_points": 20000,
            "heatmap_bins": 41, "file": ""},
    "spacings": {"source": "poisson", "n": 300, "realizations": 1, "n_points": 4000,
                 "unfold": True, "edge_filter": False, "drop_real": False, "file": ""},
    "sff": {"source": "gue", "n": 100, "realizations": 20, "t_min": 0.01,
            "t_max": 100.0, "t_count": 120},
    "dff": {"n": 12, "d": 3, "realizations": 5, "t_max": 20},
    "dsff": {"n": 100, "realizations": 10, "t_min": 0.1, "t_max": 200.0,
             "t_count": 120, "theta": 0.0},
    "kerr": {"mode": "trajectory", "chi": 0.3, "drive": 1.0, "period": 5.0,
             "loss": 0.2, "n_max": 30, "steps_per_period": 1000, "periods": 20,
             "n_traj": 10, "integrator": "rk4", "drive_shape": "square",
             "a_min": 0.2, "a_max": 2.0, "a_count": 4, "t_min": 1.0, "t_max": 9.0,
             "t_count": 4, "mf_periods": 150, "qle_periods": 80, "observable": "a",
             "delta_max": 0.3, "delta_0": 1e-4},
    "symmetry": {"target": "ghs-map", "spin": 4.0, "precession": 2.0, "torsion": 10.0,
                 "kick": 8.0, "damping": 0.1, "kinds": "P", "file": ""},
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    experiment: str
    seed: int = 0
    out: str = "runs/out"
    workers: int = 1
    params: dict = field(default_factory=dict)
    figure: str = ""

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}; "
                              f"choose from {', '.join(EXPERIMENTS)}")
        merged = dict(DEFAULTS[self.experiment])
        for k, v in self.params.items():
            if k not in merged:
                raise ConfigError(f"unknown parameter {k!r} for experiment "
                                  f"{self.experiment!r}")
            merged[k] = _cast_like(merged[k], v, k)
        self.params = merged

    def to_file(self, path):
        cp = configparser.ConfigParser()
        cp["run"] = {"experiment": self.experiment, "seed": str(self.seed),
                     "out": self.out, "workers": str(self.workers)}
        if self.figure:
            cp["run"]["figure"] = self.figure
        cp[self.experiment] = {k: _to_text(v) for k, v in self.params.items()}
        with open(path, "w") as fh:
            cp.write(fh)

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        cp = configparser.ConfigParser()
        found = cp.read(path)
        if not found:
            raise ConfigError(f"config file not found: {path}")
        if "run" not in cp:
            raise ConfigError(f"{path}: missing [run] section")
        run = cp["run"]
        exp = run.get("experiment", "")
        params = dict(cp[exp]) if exp in cp else {}
        return cls(experiment=exp, seed=run.getint("seed", 0),
                   out=run.get("out", "runs/out"), workers=run.getint("workers", 1),
                   params=params, figure=run.get("figure", ""))


def _to_text(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def _cast_like(template, value, key: str):
    if isinstance(value, type(template)) and not isinstance(template, bool):
        return value
    text = str(value)
    try:
        if isinstance(template, bool):
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if isinstance(template, int):
            return int(text)
        if isinstance(template, float):
            return float(text)
        return text
    except ValueError as exc:
        raise ConfigError(f"parameter {key}={text!r}: cannot parse as "
                          f"{type(template).__name__}") from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_run(args) -> int:
    if args.config:
        cfg = RunConfig.from_file(args.config)
        if args.experiment and args.experiment != cfg.experiment:
            raise ConfigError("experiment on the command line conflicts with the config file")
    else:
        if not args.experiment:
            raise ConfigError("an experiment name (or --config) is required")
        cfg = RunConfig(experiment=args.experiment)
    if args.preset:
        preset = PRESETS.get(args.preset)
        if preset is None:
            raise ConfigError(f"unknown preset {args.preset!r}; see `dqchaos presets`")
        if preset["experiment"] != cfg.experiment:
            raise ConfigError(f"preset {args.preset} belongs to experiment "
                              f"{preset['experiment']!r}")
        cfg = RunConfig(experiment=cfg.experiment, seed=cfg.seed, out=cfg.out,
                        workers=cfg.workers, params=dict(preset["params"]),
                        figure=preset["figure"])
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        if k not in cfg.params:
            raise ConfigError(f"unknown parameter {k!r} for experiment {cfg.experiment!r}")
        cfg.params[k] = _cast_like(DEFAULTS[cfg.experiment][k], v, k)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out:
        cfg.out = args.out
    if args.workers is not None:
        cfg.workers = args.workers

    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"tool": "dqchaos", "version": __version__, "experiment": cfg.experiment,
                "seed": cfg.seed, "workers": cfg.workers, "figure": cfg.figure,
                "params": cfg.params, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    try:
        checks = RUNNERS[cfg.experiment](cfg.params, cfg.seed, out, cfg.workers)
    except (np.linalg.LinAlgError, EigenSolverError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    ok = all(c["passed"] for c in checks)
    (out / "summary.json").write_text(json.dumps({"ok": ok, "checks": checks}, indent=2))
    for c in checks:
        print(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}: "
              f"value={c['value']:.6g} tolerance={c['tolerance']:.6g}")
    return 0 if ok else 4


def cmd_analyze(args) -> int:
    path = Path(args.spectrum)
    if not path.exists():
        raise ConfigError(f"spectrum file not found: {path}")
    values, header = serialize.read_spectrum(path)
    out = Path(args.out or path.parent)
    out.mkdir(parents=True, exist_ok=True)
    wrote = []
    if args.csr:
        res = complex_spacing_ratios(values)
        serialize.write_table(out / "csr.csv", ["re", "im"],
                              ((w.real, w.imag) for w in res.z),
                              meta={"statistic": "complex_spacing_ratio",
                                    "mean_r": res.mean_r, "mean_cos": res.mean_cos})
        print(f"csr: n={res.z.size} mean_r={res.mean_r:.6f} mean_cos={res.mean_cos:.6f}")
        wrote.append("csr.csv")
    if args.spacings:
        s = nn_spacings(values, unfold=args.unfold, edge_filter=args.edge_filter,
                        drop_real=args.drop_real)
        grid = np.linspace(0.0, 3.0, 121)
        serialize.write_curve(out / "isq.csv", grid, empirical_cdf(s, grid),
                              meta={"statistic": "integrated_spacing",
                                    "unfold": args.unfold})
        if args.references:
            serialize.write_curve(out / "isq_poisson.csv", grid, poisson_reference_I(grid),
                                  meta={"statistic": "poisson_reference"})
        print(f"spacings: n={s.size} mean={s.mean():.6f}")
        wrote.append("isq.csv")
    if args.hermitian_ratios:
        hr = hermitian_spacing_ratios(values.real)
        print(f"hermitian ratios: mean_r_tilde={hr['mean_r_tilde']:.6f}")
    if args.sff:
        t = np.geomspace(args.t_min, args.t_max, args.t_count)
        curve = sff([values.real], t)
        serialize.write_curve(out / "sff.csv", curve.abscissa, curve.value,
                              meta={"statistic": "sff"})
        wrote.append("sff.csv")
    if args.dff:
        t = np.arange(0, args.dff_t_max + 1)
        curve = dff([values], t)
        serialize.write_curve(out / "dff.csv", curve.abscissa, curve.value,
                              meta={"statistic": "dff"})
        wrote.append("dff.csv")
    if args.dsff:
        t = np.geomspace(args.t_min, args.t_max, args.t_count)
        curve = dsff([values], t * np.exp(1j * args.theta))
        serialize.write_complex_curve(out / "dsff.csv", curve.abscissa, curve.value,
                                      meta={"statistic": "dsff"})
        wrote.append("dsff.csv")
    if args.gap:
        print(f"spectral gap ({args.gap}): {spectral_gap(values, args.gap):.8g}")
    if wrote:
        print("wrote: " + ", ".join(str(out / w) for w in wrote))
    return 0


def cmd_presets(_args) -> int:
    for name, p in PRESETS.items():
        print(f"{name:8s} experiment={p['experiment']:16s} budget~{p['budget_s']}s  "
              f"{p['note']}")
        print(f"{'':8s}   " + " ".join(f"{k}={_to_text(v)}" for k, v in p["params"].items()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dqchaos",
                                 description="generators of open quantum dynamics: "
                                             "sampling, diagnostics, figure recipes")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute an experiment into an artifact directory")
    run.add_argument("experiment", nargs="?", choices=EXPERIMENTS)
    run.add_argument("--config", help="INI config file (flat experiment section)")
    run.add_argument("--preset", help="named figure preset (see `dqchaos presets`)")
    run.add_argument("--set", action="append", metavar="KEY=VALUE",
                     help="override one experiment parameter")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--out", default=None)
    run.add_argument("--workers", type=int, default=None)
    run.set_defaults(fn=cmd_run)

    an = sub.add_parser("analyze", help="statistics of a stored spectrum file")
    an.add_argument("spectrum")
    an.add_argument("--out", default=None)
    an.add_argument("--csr", action="store_true")
    an.add_argument("--spacings", action="store_true")
    an.add_argument("--unfold", action=argparse.BooleanOptionalAction, default=True)
    an.add_argument("--edge-filter", action="store_true")
    an.add_argument("--drop-real", action="store_true")
    an.add_argument("--references", action="store_true")
    an.add_argument("--hermitian-ratios", action="store_true")
    an.add_argument("--sff", action="store_true")
    an.add_argument("--dff", action="store_true")
    an.add_argument("--dsff", action="store_true")
    an.add_argument("--gap", choices=["lindblad", "map"], default=None)
    an.add_argument("--t-min", type=float, default=0.01)
    an.add_argument("--t-max", type=float, default=100.0)
    an.add_argument("--t-count", type=int, default=120)
    an.add_argument("--theta", type=float, default=0.0)
    an.add_argument("--dff-t-max", type=int, default=20)
    an.set_defaults(fn=cmd_analyze)

    pr = sub.add_parser("presets", help="list figure-reproduction presets")
    pr.set_defaults(fn=cmd_presets)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
