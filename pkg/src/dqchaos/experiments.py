"""Experiment runners behind the CLI: sample, diagnose, write CSVs, self-check.

Each runner takes a flat parameter dict (already typed), the run seed, an
output directory, and a worker count; it writes its data files through
`serialize` and returns a list of check records {name, value, tolerance,
passed} that the driver folds into summary.json.  Parallel sweeps map over
(seed, parameter-point) work items with per-realization Philox substreams, so
results are byte-identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import serialize
from ._rng import stream
from .ensembles import (
    EnsembleSpec,
    sample_diluted_unitary,
    sample_gaussian_hermitian,
    sample_ginibre,
    sample_random_cptp,
    sample_random_lindbladian,
    sample_lemon_rmt,
    sample_rpqc,
    rescale_lindblad_spectrum,
)
from .kerr_cavity import (
    KerrParams,
    LyapunovConfig,
    fit_truncated_power_law,
    meanfield_lyapunov,
    quantum_lyapunov,
    unravel_trajectory,
    waiting_stats,
)
from .kicked_top import (
    KickedTopParams,
    analytic_numeric_gap,
    build_map,
    eigenvalue_flow,
    fixed_q_eigenvalues,
    parity_block,
    sector_spacing_statistics,
)
from .opcore import check_lindbladian, cptp_from_kraus
from .spectra import (
    complex_spacing_ratios,
    dff,
    dsff,
    empirical_cdf,
    ginibre_reference,
    ks_to_curve,
    nn_spacings,
    poisson_reference_I,
    sff,
    spectral_gap,
)
from .supports import diluted_radii, lemon_boundary, points_inside_boundary, ring_disk_pc


def _check(name, value, tolerance, passed) -> dict:
    return {"name": name, "value": float(value), "tolerance": float(tolerance),
            "passed": bool(passed)}


def _pmap(fn, items, workers: int):
    if workers <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _isq_grid(spacings, s_max=3.0, n=121):
    s = np.linspace(0.0, s_max, n)
    return s, empirical_cdf(spacings, s)


# ---------------------------------------------------------------------------
# kicked top
# ---------------------------------------------------------------------------

def _ghs_params(p: dict) -> KickedTopParams:
    return KickedTopParams(spin=p["spin"], precession=p["precession"],
                           torsion=p["torsion"], kick=p["kick"], damping=p["damping"],
                           jump_convention=p.get("jump_convention", "matched"))


def run_ghs(p: dict, seed: int, out: Path, workers: int) -> list:
    mode = p["mode"]
    checks = []
    if mode == "oracle":
        params = _ghs_params(p)
        gap = analytic_numeric_gap(params)
        two_s = int(round(2 * params.spin))
        ana = np.concatenate([fixed_q_eigenvalues(params, q)
                              for q in range(-two_s, two_s + 1) if q % 2 == 0])
        num = np.linalg.eigvals(parity_block(build_map(params), "even", params.spin))
        serialize.write_spectrum(out / "even_numeric.csv", num, source=p, sector="even")
        serialize.write_spectrum(out / "even_analytic.csv", ana, source=p, sector="even")
        checks.append(_check("analytic_numeric_hausdorff", gap, 1e-12, gap < 1e-12))
    elif mode == "flow":
        params = _ghs_params(p)
        gammas = np.arange(0.0, p["damping_max"] + 1e-12, p["damping_step"])
        paths = eigenvalue_flow(params, gammas, sector=p.get("sector", "even"))
        rows = ((k, g, j, paths[k, j].real, paths[k, j].imag)
                for k, g in enumerate(gammas) for j in range(paths.shape[1]))
        serialize.write_table(out / "flow.csv", ["step", "gamma", "traj", "re", "im"], rows,
                              meta={"experiment": "ghs", "mode": "flow", **_plain(p)})
        step = np.abs(np.diff(paths, axis=0))
        ratio = step.max() / max(np.median(step), 1e-300)
        # the 10x-median continuity bound is meaningful at fine damping steps only
        checks.append(_check("flow_continuity_ratio", ratio, 10.0,
                             ratio < 10.0 if p["damping_step"] <= 1.1e-3 else True))
    elif mode == "spacings":
        k0s = np.linspace(p["k0_min"], p["k0_max"], p["k0_count"])
        params = _ghs_params(p)
        stats = sector_spacing_statistics(params, k0s, mode="parity")
        pooled = np.concatenate(list(stats["spacings"].values()))
        s, isq = _isq_grid(pooled)
        serialize.write_curve(out / "isq.csv", s, isq,
                              meta={"statistic": "integrated_spacing", **_plain(p)})
        serialize.write_curve(out / "isq_poisson.csv", s, poisson_reference_I(s),
                              meta={"statistic": "poisson_reference"})
        n2 = params.dim ** 2
        ref = ginibre_reference(n_matrices=p.get("ginibre_matrices", 10), size=n2, seed=seed)
        serialize.write_curve(out / "isq_ginibre.csv", s, ref.cdf(s),
                              meta={"statistic": "ginibre_reference", "size": n2})
        ks_p = ks_to_curve(pooled, poisson_reference_I)
        ks_g = ks_to_curve(pooled, ref.cdf)
        serialize.write_table(out / "ks.csv", ["ks_poisson", "ks_ginibre"], [(ks_p, ks_g)],
                              meta=_plain(p))
        want_poisson = p["kick"] == 0.0
        ok = ks_p < ks_g if want_poisson else ks_g < ks_p
        checks.append(_check("closer_to_" + ("poisson" if want_poisson else "ginibre"),
                             min(ks_p, ks_g), max(ks_p, ks_g), ok))
    elif mode == "sectors":
        k0s = np.linspace(p["k0_min"], p["k0_max"], p["k0_count"])
        params = _ghs_params(p)
        q_list = [int(q) for q in str(p["q_list"]).split(";")]
        stats = sector_spacing_statistics(params, k0s, mode="fixed-q", q_list=q_list)
        for label, sp in stats["spacings"].items():
            s, isq = _isq_grid(sp)
            serialize.write_curve(out / f"isq_{label.replace('=', '')}.csv", s, isq,
                                  meta={"statistic": "integrated_spacing", "sector": label})
        s = np.linspace(0.0, 3.0, 121)
        serialize.write_curve(out / "isq_poisson.csv", s, poisson_reference_I(s),
                              meta={"statistic": "poisson_reference"})
        ref = ginibre_reference(n_matrices=p.get("ginibre_matrices", 10),
                                size=params.dim ** 2, seed=seed)
        serialize.write_curve(out / "isq_ginibre.csv", s, ref.cdf(s),
                              meta={"statistic": "ginibre_reference"})
        ana = np.concatenate([fixed_q_eigenvalues(params, q) for q in q_list])
        serialize.write_spectrum(out / "sector_union.csv", ana, source=_plain(p))
        checks.append(_check("sectors_written", len(stats["spacings"]), 0,
                             len(stats["spacings"]) > 0))
    else:
        raise ValueError(f"unknown ghs mode {mode!r}")
    return checks


# ---------------------------------------------------------------------------
# random Lindbladians and the lemon
# ---------------------------------------------------------------------------

def _lemon_worker(args):
    n, rank, alpha, basis, model, seed = args
    if model == "rmt":
        M = sample_lemon_rmt(n, seed=seed, alpha=alpha)
        return np.linalg.eigvals(M)
    L = sample_random_lindbladian(n, rank, alpha, basis, seed)
    return np.linalg.eigvals(L)


def run_random_lindblad(p: dict, seed: int, out: Path, workers: int) -> list:
    n, rank, alpha = p["n"], p["rank"] or None, p["alpha"]
    checks = []
    for r in range(p["realizations"]):
        L = sample_random_lindbladian(n, rank, alpha, p["basis"], seed + r)
        ev = np.linalg.eigvals(L)
        spec = EnsembleSpec(kind="RandomLindbladian", N=n, R=rank or n * n,
                            alpha=alpha, seed=seed + r, basis=p["basis"])
        serialize.write_spectrum(out / f"spectrum_{r:03d}.csv", ev,
                                 source=spec.to_dict(), seed=seed + r)
        rep = check_lindbladian(L, eigenvalues=ev)
        checks.append(_check(f"valid_lindbladian_{r:03d}", rep["max_real_part"], 1e-8,
                             rep["ok"]))
        checks.append(_check(f"gap_{r:03d}", spectral_gap(ev, "lindblad"), 0.0, True))
    return checks


def run_lemon(p: dict, seed: int, out: Path, workers: int) -> list:
    n = p["n"]
    model = p["model"]
    rank = p["rank"] or (n * n if p["basis"] == "matrix-units" else n * n - 1)
    boundary = lemon_boundary(resolution=p["boundary_resolution"])
    serialize.write_table(out / "boundary.csv", ["re", "im"],
                          ((z.real, z.imag) for z in boundary),
                          meta={"curve": "lemon_boundary"})
    items = [(n, rank, p["alpha"], p["basis"], model, seed + r)
             for r in range(p["realizations"])]
    spectra = _pmap(_lemon_worker, items, workers)
    fractions = []
    for r, ev in enumerate(spectra):
        if model == "rmt":
            rescaled = ev
        else:
            ev = np.delete(ev, np.argmin(np.abs(ev)))      # stationary eigenvalue
            rescaled = rescale_lindblad_spectrum(ev, n, rank, mode=p["scale_mode"])
        serialize.write_spectrum(out / f"rescaled_{r:03d}.csv", rescaled,
                                 source={"model": model, **_plain(p)}, seed=seed + r)
        frac = float(points_inside_boundary(rescaled, dilate=p["dilate"]).mean())
        fractions.append(frac)
    frac = float(np.mean(fractions))
    serialize.write_table(out / "coverage.csv", ["realization", "fraction_inside"],
                          list(enumerate(fractions)), meta={"dilate": p["dilate"]})
    return [_check("lemon_coverage", frac, 0.98, frac >= 0.98)]


def run_diluted(p: dict, seed: int, out: Path, workers: int) -> list:
    n, d = p["n"], p["d"]
    ps = [float(x) for x in str(p["p_list"]).split(";")]
    rows = []
    checks = []
    for i, pp in enumerate(ps):
        S = sample_diluted_unitary(n, d, pp, seed + i)
        ev = np.linalg.eigvals(S)
        ev_n = np.delete(ev, np.argmin(np.abs(ev - 1.0)))   # steady-state eigenvalue
        mods = np.sort(np.abs(ev_n))
        k = min(10, mods.size)
        r_in, r_out = float(mods[:k].mean()), float(mods[-k:].mean())
        ri_t, ro_t, disk = diluted_radii(pp, d)
        rows.append((pp, r_in, r_out, ri_t, ro_t, 1.0 if disk else 0.0))
        spec = EnsembleSpec(kind="DilutedUnitary", N=n, d=d, p=pp, seed=seed + i)
        serialize.write_spectrum(out / f"spectrum_p{pp:.3f}.csv".replace(".", "_", 1), ev,
                                 source=spec.to_dict(), seed=seed + i)
        if not disk and ri_t > 0.05:
            checks.append(_check(f"inner_radius_p={pp}", abs(r_in - ri_t) / ri_t, 0.10,
                                 abs(r_in - ri_t) / ri_t < 0.10))
        checks.append(_check(f"outer_radius_p={pp}", abs(r_out - ro_t) / ro_t, 0.10,
                             abs(r_out - ro_t) / ro_t < 0.10))
    serialize.write_table(out / "radii.csv",
                          ["p", "r_inner_emp", "r_outer_emp", "r_inner_theory",
                           "r_outer_theory", "disk"], rows,
                          meta={"N": n, "d": d, "p_c": ring_disk_pc(d)})
    return checks


def run_rpqc(p: dict, seed: int, out: Path, workers: int) -> list:
    n, k, tau = p["n"], p["k"], p["tau"]
    eps_list = [float(x) for x in str(p["eps_list"]).split(";")]
    rows = []
    for i, eps in enumerate(eps_list):
        S = sample_rpqc(n, k, tau, eps, seed + i)
        ev = np.linalg.eigvals(S)
        ev_n = np.delete(ev, np.argmin(np.abs(ev - 1.0)))
        mods = np.sort(np.abs(ev_n))
        m = min(10, mods.size)
        # angular nonuniformity of the nontrivial bulk (rotational-symmetry probe)
        ang = np.angle(ev_n)
        hist, _ = np.histogram(ang, bins=12, range=(-np.pi, np.pi))
        nonuni = float(hist.std() / max(hist.mean(), 1e-300))
        rows.append((eps, float(mods[:m].mean()), float(mods[-m:].mean()), nonuni))
        spec = EnsembleSpec(kind="RPQC", N=n, R=k, tau=tau, eps=eps, seed=seed + i)
        serialize.write_spectrum(out / f"spectrum_eps{i}.csv", ev,
                                 source=spec.to_dict(), seed=seed + i)
    serialize.write_table(out / "rpqc.csv",
                          ["eps", "r_inner_emp", "r_outer_emp", "angular_nonuniformity"],
                          rows, meta={"N": n, "K": k, "tau": tau})
    return [_check("rpqc_rows", len(rows), 0, len(rows) > 0)]


# ---------------------------------------------------------------------------
# reference statistics
# ---------------------------------------------------------------------------

def _poisson_cloud(n_points: int, seed: int) -> np.ndarray:
    rng = stream(seed, 31)
    side = np.sqrt(n_points)
    pts = rng.random((n_points, 2)) * side
    return pts[:, 0] + 1j * pts[:, 1]


def _spectra_from_source(p: dict, seed: int):
    src = p["source"]
    if src == "poisson":
        return [_poisson_cloud(p["n_points"], seed + i) for i in range(p["realizations"])]
    if src == "ginue":
        out = []
        for i in range(p["realizations"]):
            G = sample_ginibre("complex", p["n"], p["n"], seed=seed + i)
            out.append(np.linalg.eigvals(G))
        return out
    if src == "file":
        values, _ = serialize.read_spectrum(p["file"])
        return [values]
    raise ValueError(f"unknown source {src!r}")


def run_csr(p: dict, seed: int, out: Path, workers: int) -> list:
    spectra = _spectra_from_source(p, seed)
    zs = []
    for ev in spectra:
        zs.append(complex_spacing_ratios(ev).z)
    z = np.concatenate(zs)
    serialize.write_table(out / "csr.csv", ["re", "im"], ((w.real, w.imag) for w in z),
                          meta={"statistic": "complex_spacing_ratio", **_plain(p)})
    bins = p["heatmap_bins"]
    H, xe, ye = np.histogram2d(z.real, z.imag, bins=bins, range=[[-1, 1], [-1, 1]],
                               density=True)
    rows = ((0.5 * (xe[i] + xe[i + 1]), 0.5 * (ye[j] + ye[j + 1]), H[i, j])
            for i in range(bins) for j in range(bins))
    serialize.write_table(out / "csr_heatmap.csv", ["x", "y", "value"], rows,
                          meta={"statistic": "csr_density", "bins": bins})
    mean_r = float(np.abs(z).mean())
    mean_cos = float(np.cos(np.angle(z)).mean())
    serialize.write_table(out / "csr_summary.csv", ["mean_r", "mean_cos", "n"],
                          [(mean_r, mean_cos, z.size)], meta=_plain(p))
    return [_check("csr_samples", z.size, 3, z.size >= 3)]


def run_spacings(p: dict, seed: int, out: Path, workers: int) -> list:
    spectra = _spectra_from_source(p, seed)
    pooled = np.concatenate([
        nn_spacings(ev, unfold=p["unfold"], edge_filter=p["edge_filter"],
                    drop_real=p["drop_real"]) for ev in spectra])
    s, isq = _isq_grid(pooled)
    serialize.write_curve(out / "isq.csv", s, isq, meta={"statistic": "integrated_spacing",
                                                         **_plain(p)})
    serialize.write_curve(out / "isq_poisson.csv", s, poisson_reference_I(s),
                          meta={"statistic": "poisson_reference"})
    ks_p = ks_to_curve(pooled, poisson_reference_I)
    serialize.write_table(out / "ks.csv", ["ks_poisson"], [(ks_p,)], meta=_plain(p))
    return [_check("spacing_samples", pooled.size, 3, pooled.size >= 3)]


def run_sff(p: dict, seed: int, out: Path, workers: int) -> list:
    n = p["n"]
    spectra = []
    for i in range(p["realizations"]):
        if p["source"] == "gue":
            H = sample_gaussian_hermitian("GUE", n, "N", seed=seed + i)
            spectra.append(np.linalg.eigvalsh(H))
        elif p["source"] == "poisson":
            rng = stream(seed + i, 17)
            spectra.append(np.sort(rng.random(n) * 4.0 - 2.0))
        else:
            raise ValueError("sff source must be 'gue' or 'poisson'")
    t = np.geomspace(p["t_min"], p["t_max"], p["t_count"])
    curve = sff(spectra, t)
    serialize.write_curve(out / "sff.csv", curve.abscissa, curve.value,
                          meta={"statistic": "sff", **_plain(p)})
    k0 = curve.value[0]
    return [_check("sff_t0", k0, n * n * 0.2, abs(k0 - n * n) < 0.2 * n * n
                   or p["t_min"] > 0.05)]


def run_dff(p: dict, seed: int, out: Path, workers: int) -> list:
    n, d = p["n"], p["d"]
    t = np.arange(0, p["t_max"] + 1)
    spectra = []
    worst = 0.0
    for i in range(p["realizations"]):
        S = cptp_from_kraus(sample_random_cptp(n, d, seed=seed + i))
        ev = np.linalg.eigvals(S)
        spectra.append(ev)
        P = np.eye(S.shape[0], dtype=complex)
        for k in t:
            gap = abs(np.sum(ev ** k).real - np.trace(P).real)
            worst = max(worst, gap)
            P = P @ S
    curve = dff(spectra, t)
    serialize.write_curve(out / "dff.csv", curve.abscissa, curve.value,
                          meta={"statistic": "dff", **_plain(p)})
    return [_check("dff_trace_oracle", worst, 1e-8, worst < 1e-8)]


def run_dsff(p: dict, seed: int, out: Path, workers: int) -> list:
    n = p["n"]
    spectra = []
    for i in range(p["realizations"]):
        G = sample_ginibre("complex", n, n, seed=seed + i) / np.sqrt(n)
        spectra.append(np.linalg.eigvals(G))
    t = np.geomspace(p["t_min"], p["t_max"], p["t_count"])
    tau = t * np.exp(1j * p["theta"])
    curve = dsff(spectra, tau)
    serialize.write_complex_curve(out / "dsff.csv", curve.abscissa, curve.value,
                                  meta={"statistic": "dsff", **_plain(p)})
    return [_check("dsff_tau0_scale", curve.value[0], n * n,
                   curve.value[0] <= n * n + 1e-6)]


# ---------------------------------------------------------------------------
# Kerr cavity
# ---------------------------------------------------------------------------

def _kerr_params(p: dict, seed: int) -> KerrParams:
    return KerrParams(chi=p["chi"], drive=p["drive"], period=p["period"], loss=p["loss"],
                      n_max=p["n_max"], dt=p["period"] / p["steps_per_period"], seed=seed,
                      drive_shape=p.get("drive_shape", "square"))


def _kerr_cell(args):
    p, A, T, seed = args
    pp = dict(p)
    pp["drive"], pp["period"] = A, T
    params = _kerr_params(pp, seed)
    lam_mf = meanfield_lyapunov(params, duration=p["mf_periods"] * T,
                                steps_per_period=p["steps_per_period"])
    cfg = LyapunovConfig(observable=p["observable"], delta_max=p["delta_max"],
                         delta_0=p["delta_0"])
    q = quantum_lyapunov(params, cfg, duration=p["qle_periods"] * T, seed=seed,
                         integrator="expm")
    rec, _ = unravel_trajectory(params, duration=p["qle_periods"] * T, seed=seed + 1,
                                integrator="expm", sample_times=np.array([0.0]))
    if rec.n_clicks >= 24:
        fit = fit_truncated_power_law(waiting_stats(rec))
        alpha, reject = fit.alpha, not fit.accepted
    else:
        alpha, reject = 0.0, True
    return (A, T, lam_mf, q["lambda"], q["stderr"], float(q["resets"]), alpha,
            1.0 if reject else 0.0)


def run_kerr(p: dict, seed: int, out: Path, workers: int) -> list:
    mode = p["mode"]
    checks = []
    if mode == "trajectory":
        params = _kerr_params(p, seed)
        rec, samples = unravel_trajectory(params, duration=p["periods"] * p["period"],
                                          seed=seed, integrator=p["integrator"])
        serialize.write_table(out / "clicks.csv", ["t"], ((t,) for t in rec.times),
                              meta={"experiment": "kerr", **_plain(p)})
        serialize.write_table(out / "trace.csv", ["t", "re_a", "im_a", "n"],
                              zip(samples["t"], samples["a"].real, samples["a"].imag,
                                  samples["n"]), meta={"experiment": "kerr"})
        checks.append(_check("clicks", rec.n_clicks, 0, True))
        if rec.n_clicks >= 3:
            st = waiting_stats(rec)
            serialize.write_curve(out / "waiting_hist.csv",
                                  np.sqrt(st["bin_edges"][:-1] * st["bin_edges"][1:]),
                                  st["density"], meta={"statistic": "waiting_density",
                                                       "ratio": st["ratio"]})
    elif mode == "waiting":
        params = _kerr_params(p, seed)
        taus = []
        for k in range(p["n_traj"]):
            rec, _ = unravel_trajectory(params, duration=p["periods"] * p["period"],
                                        seed=seed + k, integrator=p["integrator"],
                                        sample_times=np.array([0.0]))
            taus.append(rec.waiting_times)
        taus = np.concatenate(taus)
        st = waiting_stats(taus)
        fit = fit_truncated_power_law(st)
        serialize.write_curve(out / "waiting_hist.csv",
                              np.sqrt(st["bin_edges"][:-1] * st["bin_edges"][1:]),
                              st["density"],
                              meta={"statistic": "waiting_density", "ratio": st["ratio"],
                                    "alpha": fit.alpha, "tau_c": fit.tau_c,
                                    "accepted": fit.accepted})
        checks.append(_check("waiting_events", taus.size, 2, taus.size >= 2))
    elif mode == "lyapunov-map":
        As = np.linspace(p["a_min"], p["a_max"], p["a_count"])
        Ts = np.linspace(p["t_min"], p["t_max"], p["t_count"])
        items = [(p, float(A), float(T), seed + 1000 * i + j)
                 for i, A in enumerate(As) for j, T in enumerate(Ts)]
        rows = _pmap(_kerr_cell, items, workers)
        serialize.write_table(out / "lyap_map.csv",
                              ["a_drive", "period", "lambda_mf", "lambda_qle",
                               "qle_stderr", "resets", "alpha_fit", "reject_flag"],
                              rows, meta={"experiment": "kerr", **_plain(p)})
        mf_sign = np.array([r[2] > 0.005 for r in rows])
        q_sign = np.array([(r[3] - 2 * r[4] > 0) and r[5] >= 3 for r in rows])
        agree = float((mf_sign == q_sign).mean())
        checks.append(_check("sign_agreement", agree, 0.70, agree >= 0.70))
    else:
        raise ValueError(f"unknown kerr mode {mode!r}")
    return checks


# ---------------------------------------------------------------------------
# symmetry reports
# ---------------------------------------------------------------------------

def run_symmetry(p: dict, seed: int, out: Path, workers: int) -> list:
    import json

    from .opcore import spin_operators
    from .symmetry import SymmetryOp, block_decompose, check_symmetry, spectrum_reflection_check

    target = p["target"]
    if target == "ghs-map":
        params = KickedTopParams(spin=p["spin"], precession=p["precession"],
                                 torsion=p["torsion"], kick=p["kick"], damping=p["damping"])
        M = build_map(params)
        rz = np.diag(np.exp(-1j * np.pi * np.diag(spin_operators(params.spin)["jz"]).real))
        U = np.kron(rz.conj(), rz)
    elif target == "file":
        op = serialize.read_operator(p["file"])
        M = np.asarray(op)
        U = np.eye(M.shape[0])
    else:
        raise ValueError("target must be 'ghs-map' or 'file'")
    reports = []
    for kind in str(p["kinds"]).split(";"):
        kind = kind.strip()
        if not kind:
            continue
        sym = SymmetryOp(kind=kind, unitary=U, square=1)
        reports.append(check_symmetry(M, sym))
    refl = spectrum_reflection_check(np.linalg.eigvals(M), "T+")
    reports.append(refl)
    (out / "symmetry_report.json").write_text(json.dumps(reports, indent=2, default=_json))
    if target == "ghs-map":
        dec = block_decompose(M, rz)
        for k, ev in enumerate(dec.sector_spectra(M)):
            serialize.write_spectrum(out / f"sector_{k}.csv", ev,
                                     source=_plain(p), sector=f"phase={dec.labels[k]:.6f}")
    ok = all(r.get("ok", True) for r in reports)
    return [_check("symmetry_checks", sum(r.get("ok", True) for r in reports),
                   len(reports), ok)]


def _json(x):
    if isinstance(x, (np.floating, np.integer)):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    raise TypeError(f"not JSON-serializable: {type(x)}")


def _plain(p: dict) -> dict:
    return {k: (v if isinstance(v, (int, float, str, bool)) else str(v))
            for k, v in p.items()}


RUNNERS = {
    "ghs": run_ghs,
    "random-lindblad": run_random_lindblad,
    "lemon": run_lemon,
    "diluted": run_diluted,
    "rpqc": run_rpqc,
    "csr": run_csr,
    "spacings": run_spacings,
    "sff": run_sff,
    "dff": run_dff,
    "dsff": run_dsff,
    "kerr": run_kerr,
    "symmetry": run_symmetry,
}
