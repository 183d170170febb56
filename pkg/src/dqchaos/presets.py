"""Named figure-reproduction presets: experiment + parameters at desk scale.

Each preset pins the published protocol parameters (spin, damping, torsion
windows, dilution grids, drive planes); ensemble counts are chosen so a preset
finishes on a laptop.  `dqchaos presets` lists them; `dqchaos run <exp>
--preset <name>` applies one, with CLI flags overriding individual keys.
"""

from __future__ import annotations

PRESETS = {
    "fig2a": {
        "experiment": "ghs",
        "figure": "fig2a",
        "budget_s": 1200,
        "params": {
            "mode": "flow", "spin": 6.0, "precession": 2.0, "torsion": 10.0,
            "kick": 8.0, "damping": 0.0, "damping_max": 0.4, "damping_step": 1e-4,
            "sector": "even",
        },
        "note": "eigenvalue flow of the even sector under increasing damping",
    },
    "fig2b": {
        "experiment": "ghs",
        "figure": "fig2b",
        "budget_s": 900,
        "params": {
            "mode": "spacings", "spin": 10.0, "precession": 2.0, "torsion": 10.0,
            "kick": 0.0, "damping": 0.1, "k0_min": 10.0, "k0_max": 12.0,
            "k0_count": 100, "ginibre_matrices": 10,
        },
        "note": "integrated spacing distribution, regular regime; rerun with kick=8 "
                "for the chaotic curve",
    },
    "fig3": {
        "experiment": "lemon",
        "figure": "fig3",
        "budget_s": 300,
        "params": {
            "n": 50, "model": "lindblad", "rank": 0, "alpha": 0.0,
            "basis": "matrix-units", "realizations": 1, "boundary_resolution": 256,
            "dilate": 1.05, "scale_mode": "N",
        },
        "note": "single purely dissipative realization against the lemon boundary",
    },
    "fig4": {
        "experiment": "csr",
        "figure": "fig4",
        "budget_s": 180,
        "params": {
            "source": "ginue", "n": 300, "realizations": 10, "n_points": 100000,
            "heatmap_bins": 41, "file": "",
        },
        "note": "spacing-ratio density on the unit disk; rerun with source=poisson "
                "for the uncorrelated reference",
    },
    "fig5": {
        "experiment": "diluted",
        "figure": "fig5",
        "budget_s": 300,
        "params": {
            "n": 50, "d": 4,
            "p_list": "0.0;0.1;0.2;0.3;0.4;0.5;0.6;0.7;0.8;0.9;1.0",
        },
        "note": "ring-disk radii of diluted unitaries against the closed form",
    },
    "fig6": {
        "experiment": "kerr",
        "figure": "fig6",
        "budget_s": 900,
        "params": {
            "mode": "lyapunov-map", "chi": 0.3, "loss": 0.2, "n_max": 40,
            "a_min": 0.2, "a_max": 2.0, "a_count": 10,
            "t_min": 1.0, "t_max": 9.0, "t_count": 10,
            "steps_per_period": 300, "mf_periods": 150, "qle_periods": 80,
            "observable": "a", "delta_max": 0.3, "delta_0": 1e-4,
            "drive": 1.0, "period": 5.0, "integrator": "expm",
        },
        "note": "coarse (A, T)-plane mean-field and trajectory Lyapunov maps",
    },
    "fig7": {
        "experiment": "ghs",
        "figure": "fig7",
        "budget_s": 300,
        "params": {
            "mode": "sectors", "spin": 10.0, "precession": 2.0, "torsion": 10.0,
            "kick": 0.0, "damping": 0.1, "k0_min": 10.0, "k0_max": 12.0,
            "k0_count": 100, "q_list": "2;6;12", "ginibre_matrices": 10,
        },
        "note": "sector-resolved spacing statistics of the regular regime",
    },
}
