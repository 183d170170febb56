"""Acceptance suite: one test per criterion, each printing PASS/FAIL with timing.

Numerical tolerances are asserted exactly as stated.  Wall-clock budgets were
set for a laptop-class machine; they are enforced against
budget * DQCHAOS_TIME_SCALE (default 6.0) so slow CI boxes do not turn a
passing numerical criterion into a spurious failure (the 2-core reference box
runs the N=60 eigenproblems about 4x slower than an 8-core laptop).
"""

import os
import time

import numpy as np
from scipy.integrate import quad

from dqchaos._rng import stream
from dqchaos.ensembles import (
    rescale_lindblad_spectrum,
    sample_diluted_unitary,
    sample_gaussian_hermitian,
    sample_ginibre,
    sample_random_cptp,
    sample_random_lindbladian,
)
from dqchaos.kerr_cavity import (
    KerrParams,
    LyapunovConfig,
    fit_truncated_power_law,
    master_evolution,
    meanfield_lyapunov,
    quantum_lyapunov,
    trajectory_ensemble_state,
    unravel_trajectory,
    waiting_stats,
)
from dqchaos.kicked_top import (
    KickedTopParams,
    build_map,
    fixed_q_eigenvalues,
    parity_block,
    sector_spacing_statistics,
)
from dqchaos.opcore import (
    HSBasis,
    coherent_state,
    cptp_from_kraus,
    dissipator_from_cp_map,
    dissipator_from_jumps,
    dissipator_from_kossakowski,
    kossakowski_to_jumps,
    trace_distance,
    vectorize,
)
from dqchaos.spectra import (
    complex_spacing_ratios,
    empirical_cdf,
    ginibre_reference,
    ks_to_curve,
    match_spectra,
    poisson_reference_I,
)
from dqchaos.supports import (
    points_inside_boundary,
    ring_disk_pc,
    semicircle_difference_density,
)

TIME_SCALE = float(os.environ.get("DQCHAOS_TIME_SCALE", "6.0"))


def report(name: str, passed: bool, detail: str, elapsed: float, budget: float):
    status = "PASS" if passed else "FAIL"
    print(f"[{status}] {name}: {detail}  ({elapsed:.1f}s / budget {budget:.0f}s)")
    assert passed, f"{name}: {detail}"
    assert elapsed <= budget * TIME_SCALE, \
        f"{name}: {elapsed:.1f}s exceeded {budget}s x {TIME_SCALE}"


def test_acceptance_ghs_analytic_oracle():
    t0 = time.time()
    params = KickedTopParams(spin=10.0, precession=2.0, torsion=10.0, kick=0.0,
                             damping=0.1)
    phi = build_map(params)
    num = np.linalg.eigvals(parity_block(phi, "even", params.spin))
    ana = np.concatenate([fixed_q_eigenvalues(params, q)
                          for q in range(-20, 21) if q % 2 == 0])
    assert num.size == ana.size == 221
    _, dist = match_spectra(num, ana)
    report("ghs_analytic_oracle", dist < 1e-12,
           f"Hausdorff distance {dist:.3e} < 1e-12", time.time() - t0, 30)


def test_acceptance_lemon_support():
    t0 = time.time()
    n, realizations = 60, 20
    total, inside = 0, 0
    for r in range(realizations):
        L = sample_random_lindbladian(n, None, 0.0, "matrix-units", seed=100 + r)
        ev = np.linalg.eigvals(L)
        ev = np.delete(ev, np.argmin(np.abs(ev)))
        lp = rescale_lindblad_spectrum(ev, n, mode="N")
        mask = points_inside_boundary(lp, dilate=1.05)
        total += mask.size
        inside += int(mask.sum())
    frac = inside / total
    report("lemon_support", frac >= 0.98,
           f"fraction inside 1.05-dilated boundary = {frac:.4f} >= 0.98 "
           f"({realizations} realizations, N={n})", time.time() - t0, 300)


def test_acceptance_difference_density():
    t0 = time.time()
    integral = quad(semicircle_difference_density, -4, 4, limit=400)[0]
    center = semicircle_difference_density(0.0)
    ok1 = abs(integral - 1.0) < 1e-6
    ok2 = abs(center - 8.0 / (3.0 * np.pi ** 2)) < 1e-8

    def cdf(w):
        w = np.atleast_1d(w)
        return np.array([quad(semicircle_difference_density, -4, min(x, 4.0),
                              limit=200)[0] if x > -4 else 0.0 for x in w])

    diffs = []
    for k in range(10):
        H = sample_gaussian_hermitian("GUE", 400, "N", seed=500 + k)
        w = np.linalg.eigvalsh(H)
        idx = stream(800 + k).integers(0, 400, size=(4000, 2))
        keep = idx[:, 0] != idx[:, 1]
        diffs.append(w[idx[keep, 0]] - w[idx[keep, 1]])
    sample = np.concatenate(diffs)
    grid = np.linspace(-3.95, 3.95, 120)
    ks = np.abs(empirical_cdf(sample, grid) - cdf(grid)).max()
    ok3 = ks < 0.03
    report("difference_density", ok1 and ok2 and ok3,
           f"integral err {abs(integral - 1):.2e} < 1e-6; center err "
           f"{abs(center - 8 / (3 * np.pi ** 2)):.2e} < 1e-8; KS to GUE MC {ks:.4f} < 0.03",
           time.time() - t0, 60)


def test_acceptance_diluted_unitaries():
    t0 = time.time()
    n, d = 50, 4
    from dqchaos.supports import diluted_radii

    worst = 0.0
    for i, p in enumerate((0.1, 0.3, 0.5, 0.8)):
        S = sample_diluted_unitary(n, d, p, seed=300 + i)
        ev = np.linalg.eigvals(S)
        ev = np.delete(ev, np.argmin(np.abs(ev - 1.0)))
        mods = np.sort(np.abs(ev))
        r_in, r_out = mods[:10].mean(), mods[-10:].mean()
        ri_t, ro_t, disk = diluted_radii(p, d)
        worst = max(worst, abs(r_out - ro_t) / ro_t)
        if not disk:
            worst = max(worst, abs(r_in - ri_t) / ri_t)
    ok_radii = worst < 0.10

    # ring-disk crossover bracket around p_c(4) = 2/3
    bracket_lo, bracket_hi = None, None
    for j, p in enumerate(np.arange(0.50, 0.90001, 0.05)):
        S = sample_diluted_unitary(n, d, float(p), seed=400 + j)
        ev = np.linalg.eigvals(S)
        ev = np.delete(ev, np.argmin(np.abs(ev - 1.0)))
        mods = np.sort(np.abs(ev))
        ring = mods[:10].mean() > 0.1 * mods[-10:].mean()
        if ring:
            bracket_lo = float(p)
        elif bracket_hi is None:
            bracket_hi = float(p)
    pc = ring_disk_pc(d)
    ok_bracket = (bracket_lo is not None and bracket_hi is not None
                  and bracket_lo <= pc + 0.1 and bracket_hi >= pc - 0.1)
    report("diluted_unitaries", ok_radii and ok_bracket,
           f"worst radius error {worst:.3f} < 0.10; crossover bracket "
           f"[{bracket_lo}, {bracket_hi}] contains p_c={pc:.3f} +- 0.1",
           time.time() - t0, 300)


def test_acceptance_csr_references():
    t0 = time.time()
    rng = stream(42, 7)
    side = np.sqrt(100000)
    pts = rng.random((100000, 2)) * side
    res_p = complex_spacing_ratios(pts[:, 0] + 1j * pts[:, 1])
    ok_p = abs(res_p.mean_r - 2 / 3) < 0.01 and abs(res_p.mean_cos) < 0.01

    zs = []
    for k in range(10):
        G = sample_ginibre("complex", 300, 300, seed=600 + k)
        zs.append(complex_spacing_ratios(np.linalg.eigvals(G)).z)
    z = np.concatenate(zs)
    mean_cos = float(np.cos(np.angle(z)).mean())
    frac_inner = float(np.mean(np.abs(z) < 0.1))
    flat_inner = 0.01                         # flat unit disk puts |z|<0.1 mass at r^2
    ok_g = mean_cos < -0.1 and frac_inner < 0.2 * flat_inner
    report("csr_references", ok_p and ok_g,
           f"Poisson <r>={res_p.mean_r:.4f} (2/3 +- 0.01), <cos>={res_p.mean_cos:+.4f} "
           f"(0 +- 0.01); GinUE <cos>={mean_cos:+.3f} < -0.1, inner density "
           f"{frac_inner / flat_inner:.2f} of flat < 0.2", time.time() - t0, 180)


def test_acceptance_validity_suite():
    t0 = time.time()
    rng = stream(77)
    n_total, n_lind = 1000, 500
    failures = []
    for i in range(n_total):
        if i < n_lind:
            n = int(rng.integers(2, 9))
            basis_kind = "matrix-units" if rng.random() < 0.5 else "su-traceless"
            basis = (HSBasis.matrix_units(n) if basis_kind == "matrix-units"
                     else HSBasis.su_traceless(n))
            rank = int(rng.integers(1, basis.size + 1))
            alpha = float(rng.choice([0.0, 0.5, 1.0]))
            from dqchaos.ensembles import sample_kossakowski

            K = sample_kossakowski(basis.size, rank, seed=2000 + i)
            LD = dissipator_from_kossakowski(K.matrix, basis)
            jumps = kossakowski_to_jumps(K.matrix, basis)
            LD2 = dissipator_from_jumps(jumps)
            psi = np.zeros_like(LD)
            for L in jumps:
                psi += np.kron(L.conj(), L)
            LD3 = dissipator_from_cp_map(psi)
            scale = max(np.abs(LD).max(), 1.0)
            if np.abs(LD - LD2).max() > 1e-10 * scale or np.abs(LD - LD3).max() > 1e-10 * scale:
                failures.append((i, "path equivalence"))
                continue
            L = LD
            if alpha > 0:
                from dqchaos.opcore import hamiltonian_superop

                H = sample_gaussian_hermitian("GUE", n, "1/N", seed=3000 + i)
                L = alpha * hamiltonian_superop(H) + LD
            ev = np.linalg.eigvals(L)
            esc = max(np.abs(ev).max(), 1e-300)
            tp = np.abs(vectorize(np.eye(n)) @ L).max() / max(scale, 1e-300)
            conj_gap = np.abs(ev[:, None] - ev.conj()[None, :]).min(axis=1).max() / esc
            if not (tp < 1e-10 and ev.real.max() <= 1e-8
                    and np.abs(ev).min() / esc < 1e-7 and conj_gap < 1e-7):
                failures.append((i, "lindblad invariants"))
        else:
            n = int(rng.integers(2, 9))
            dd = int(rng.integers(1, 7))
            method = "stinespring" if rng.random() < 0.5 else "choi"
            ks = sample_random_cptp(n, dd, seed=4000 + i, method=method)
            S = cptp_from_kraus(ks)
            from dqchaos.opcore import choi_of_map

            C = choi_of_map(S)
            w = np.linalg.eigvalsh(0.5 * (C + C.conj().T))
            ev = np.linalg.eigvals(S)
            radius = np.abs(ev).max()
            conj_gap = np.abs(ev[:, None] - ev.conj()[None, :]).min(axis=1).max() / radius
            if not (w.min() > -1e-9 * max(w.max(), 1.0) and radius <= 1 + 1e-9
                    and np.abs(ev - 1).min() < 1e-7 and conj_gap < 1e-7):
                failures.append((i, "map invariants"))
    report("validity_suite", not failures,
           f"{n_total - len(failures)}/{n_total} random generators pass all "
           f"invariants (first failures: {failures[:3]})", time.time() - t0, 180)


def test_acceptance_dff_oracle():
    t0 = time.time()
    rng = stream(88)
    worst = 0.0
    for i in range(50):
        n = int(rng.integers(2, 17))
        d = int(rng.integers(1, 7))
        S = cptp_from_kraus(sample_random_cptp(n, d, seed=5000 + i))
        ev = np.linalg.eigvals(S)
        P = np.eye(S.shape[0], dtype=complex)
        for t in range(21):
            worst = max(worst, abs(np.sum(ev ** t).real - np.trace(P).real))
            P = P @ S
    report("dff_oracle", worst < 1e-8,
           f"max |sum(lambda^t) - Tr Phi^t| = {worst:.2e} < 1e-8 over 50 maps, t <= 20",
           time.time() - t0, 60)


def test_acceptance_kerr_engine():
    t0 = time.time()
    # (a) trajectory ensemble vs master equation, chi = 0 driven cavity
    p = KerrParams(chi=0.0, drive=1.0, period=2.0, loss=1.0, n_max=30, seed=0)
    rho_traj = trajectory_ensemble_state(p, duration=p.period, n_traj=500, seed=900,
                                         integrator="rk4")
    rho_me = master_evolution(p, p.period)
    td = trace_distance(rho_traj, rho_me)
    ok_td = td < 0.02

    # (b) steady-regime click statistics are Poissonian
    gamma, A = 1.0, 1.0
    ps = KerrParams(chi=0.0, drive=A, period=2.0, loss=gamma, n_max=30,
                    drive_shape="constant", seed=0)
    psi0 = coherent_state(A / (gamma / 2), 30)
    rec, _ = unravel_trajectory(ps, duration=2600.0, seed=901, psi0=psi0,
                                integrator="expm", sample_times=np.array([0.0]))
    st = waiting_stats(rec)
    ok_ratio = abs(st["ratio"] - 1.0) < 0.03

    # (c) synthetic truncated-power-law recovery
    rng = stream(902)
    alpha, tau_c = 1.5, 50.0
    grid = np.geomspace(0.05, 60 * tau_c, 4000)
    pdf = grid ** (-alpha) * np.exp(-grid / tau_c)
    cdf = np.cumsum(pdf * np.gradient(grid))
    cdf /= cdf[-1]
    taus = np.interp(rng.random(200000), cdf, grid)
    fit = fit_truncated_power_law(taus)
    ok_fit = fit.accepted and abs(fit.alpha - alpha) < 0.1
    report("kerr_engine", ok_td and ok_ratio and ok_fit,
           f"trace distance {td:.4f} < 0.02 (500 traj); click ratio {st['ratio']:.4f} "
           f"= 1 +- 0.03 ({st['n']} waits); alpha {fit.alpha:.3f} = 1.5 +- 0.1",
           time.time() - t0, 600)


def test_acceptance_ghs_statistics_and_lyapunov_maps():
    t0 = time.time()
    # reduced Fig2b protocol: 20 torsion values instead of 100
    k0s = np.linspace(10.0, 12.0, 20)
    pooled = {}
    for kick in (0.0, 8.0):
        params = KickedTopParams(spin=10.0, precession=2.0, torsion=10.0, kick=kick,
                                 damping=0.1)
        stats = sector_spacing_statistics(params, k0s, mode="parity")
        pooled[kick] = np.concatenate(list(stats["spacings"].values()))
    ref = ginibre_reference(n_matrices=8, size=441, seed=903)
    ks_reg_p = ks_to_curve(pooled[0.0], poisson_reference_I)
    ks_reg_g = ks_to_curve(pooled[0.0], ref.cdf)
    ks_cha_p = ks_to_curve(pooled[8.0], poisson_reference_I)
    ks_cha_g = ks_to_curve(pooled[8.0], ref.cdf)
    ok_stats = ks_reg_p < ks_reg_g and ks_cha_g < ks_cha_p

    # coarse 10x10 (A, T) plane: sign agreement of mean-field and reset-rate maps
    As = np.linspace(0.2, 2.0, 10)
    Ts = np.linspace(1.0, 9.0, 10)
    cfg = LyapunovConfig(observable="a", delta_max=0.3, delta_0=1e-4)
    agree = 0
    for i, A in enumerate(As):
        for j, T in enumerate(Ts):
            kp = KerrParams(chi=0.3, drive=float(A), period=float(T), loss=0.2,
                            n_max=40, seed=0)
            mf = meanfield_lyapunov(kp, duration=150 * kp.period, steps_per_period=250)
            q = quantum_lyapunov(kp, cfg, duration=80 * kp.period,
                                 seed=7000 + 10 * i + j, integrator="expm")
            mf_chaotic = mf > 0.005
            q_chaotic = (q["lambda"] - 2 * q["stderr"] > 0) and q["resets"] >= 3
            agree += int(mf_chaotic == q_chaotic)
    frac = agree / 100.0
    report("ghs_statistics_and_lyapunov_maps", ok_stats and frac >= 0.70,
           f"regular KS: P {ks_reg_p:.3f} < G {ks_reg_g:.3f}; chaotic KS: G "
           f"{ks_cha_g:.3f} < P {ks_cha_p:.3f}; (A,T) sign agreement {frac:.2f} >= 0.70",
           time.time() - t0, 900)
