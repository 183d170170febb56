"""Construction-layer tests: vectorization, dissipators, maps, model operators.

Expected values are either hand-derived small cases or cross-path oracles
(jump form vs coupling-matrix form vs shifted-CP form built independently).
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dqchaos.opcore import (
    HSBasis,
    NotHermitianError,
    NotPositiveError,
    TracePreservationError,
    boson_operators,
    check_cptp,
    check_lindbladian,
    choi_of_map,
    coherent_state,
    cptp_from_kraus,
    devectorize,
    dissipator_from_cp_map,
    dissipator_from_jumps,
    dissipator_from_kossakowski,
    hamiltonian_superop,
    is_hermitian,
    kossakowski_to_jumps,
    kraus_of_choi,
    map_of_choi,
    preserves_hermiticity,
    sandwich_superop,
    spin_operators,
    superop_expm,
    vectorize,
)
from dqchaos.ensembles import sample_gaussian_hermitian, sample_kossakowski, sample_random_cptp
from dqchaos.spectra import match_spectra


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


cdim = st.integers(min_value=2, max_value=5)


# -- vectorization -----------------------------------------------------------

def test_vectorize_identity_n2():
    assert np.array_equal(vectorize(np.eye(2)), np.array([1, 0, 0, 1], dtype=complex))


@given(st.integers(0, 2 ** 31 - 1), cdim)
def test_sandwich_identity(seed, n):
    rng = np.random.default_rng(seed)
    A, rho, B = (crandn(rng, n, n) for _ in range(3))
    lhs = vectorize(A @ rho @ B)
    rhs = sandwich_superop(A, B) @ vectorize(rho)
    assert np.allclose(lhs, rhs, atol=1e-12 * max(1, np.abs(lhs).max()))


@given(st.integers(0, 2 ** 31 - 1), cdim)
def test_vectorize_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    A = crandn(rng, n, n)
    rho = A + A.conj().T
    assert np.array_equal(devectorize(vectorize(rho)), rho)


# -- hamiltonian part --------------------------------------------------------

def test_hamiltonian_superop_diag():
    H = np.diag([0.0, 1.0]).astype(complex)
    ev = np.sort_complex(np.linalg.eigvals(hamiltonian_superop(H)))
    assert np.allclose(ev, np.sort_complex(np.array([0, 0, -1j, 1j])), atol=1e-12)


def test_hamiltonian_superop_gue_difference_spectrum():
    H = sample_gaussian_hermitian("GUE", 6, "N", seed=7)
    w = np.linalg.eigvalsh(H)
    expected = (-1j * (w[:, None] - w[None, :])).ravel()
    got = np.linalg.eigvals(hamiltonian_superop(H))
    _, dist = match_spectra(got, expected)
    assert dist < 1e-10


def test_hamiltonian_superop_nfold_zero():
    # the N diagonal basis elements are stationary under -i[H, .]
    n = 5
    H = sample_gaussian_hermitian("GUE", n, "N", seed=3)
    ev = np.linalg.eigvals(hamiltonian_superop(H))
    assert np.sum(np.abs(ev) < 1e-10) >= n


def test_hamiltonian_superop_rejects_nonhermitian():
    with pytest.raises(NotHermitianError):
        hamiltonian_superop(np.array([[0, 1], [0, 0]], dtype=complex))


# -- dissipators -------------------------------------------------------------

def test_zero_jump_dissipator():
    D = dissipator_from_jumps([np.zeros((3, 3))])
    assert np.abs(D).max() == 0.0


def test_sigma_minus_dissipator_eigenvalues():
    sm = np.array([[0, 1], [0, 0]], dtype=complex)
    ev = np.sort(np.linalg.eigvals(dissipator_from_jumps([sm])).real)
    assert np.allclose(ev, [-1.0, -0.5, -0.5, 0.0], atol=1e-12)


@given(st.integers(0, 2 ** 31 - 1), cdim, st.integers(1, 3))
def test_dissipator_trace_preserving(seed, n, njump):
    rng = np.random.default_rng(seed)
    D = dissipator_from_jumps([crandn(rng, n, n) for _ in range(njump)])
    assert np.abs(vectorize(np.eye(n)) @ D).max() < 1e-10 * max(np.abs(D).max(), 1)
    assert preserves_hermiticity(D, rng=rng)


def test_zero_kossakowski_gives_zero_superoperator():
    basis = HSBasis.matrix_units(3)
    assert np.abs(dissipator_from_kossakowski(np.zeros((9, 9)), basis)).max() == 0.0
    basis_su = HSBasis.su_traceless(3)
    assert np.abs(dissipator_from_kossakowski(np.zeros((8, 8)), basis_su)).max() == 0.0


def test_kossakowski_rank1_equals_single_jump():
    basis = HSBasis.matrix_units(3)
    y = np.random.default_rng(5).standard_normal(9) + 1j * np.random.default_rng(6).standard_normal(9)
    K = np.outer(y, y.conj())
    L = sum(y[m] * basis.elements[m] for m in range(9))
    direct = dissipator_from_kossakowski(K, basis)
    via_jump = dissipator_from_jumps([L])
    assert np.abs(direct - via_jump).max() < 1e-10


@pytest.mark.parametrize("basis_kind", ["matrix-units", "su-traceless"])
def test_kossakowski_path_equals_jump_path(basis_kind):
    n = 4
    basis = HSBasis.matrix_units(n) if basis_kind == "matrix-units" else HSBasis.su_traceless(n)
    K = sample_kossakowski(basis.size, 3, seed=11)
    direct = dissipator_from_kossakowski(K.matrix, basis)
    jumps = kossakowski_to_jumps(K.matrix, basis)
    assert len(jumps) == 3
    assert np.abs(direct - dissipator_from_jumps(jumps)).max() < 1e-10


def test_kossakowski_to_jumps_rank_and_reconstruction():
    basis = HSBasis.matrix_units(3)
    K = sample_kossakowski(9, 4, seed=2)
    jumps = kossakowski_to_jumps(K.matrix, basis)
    assert len(jumps) == 4
    # rebuild K = Y Y^dag from the jump expansion coefficients
    B = basis.stacked().reshape(9, -1)
    Y = np.array([B.conj() @ L.reshape(-1) for L in jumps]).T
    assert np.abs(Y @ Y.conj().T - K.matrix).max() < 1e-10


def test_kossakowski_empty_rank():
    basis = HSBasis.matrix_units(2)
    assert kossakowski_to_jumps(np.zeros((4, 4)), basis) == []


def test_kossakowski_rejects_negative():
    basis = HSBasis.matrix_units(2)
    K = np.diag([1.0, -0.5, 0.0, 0.0]).astype(complex)
    with pytest.raises(NotPositiveError):
        dissipator_from_kossakowski(K, basis)


def test_cp_map_paths():
    rng = np.random.default_rng(8)
    n = 3
    L = crandn(rng, n, n)
    psi = np.kron(L.conj(), L)
    got = dissipator_from_cp_map(psi)
    want = dissipator_from_jumps([L])
    assert np.abs(got - want).max() < 1e-10
    assert np.abs(dissipator_from_cp_map(np.zeros((9, 9)))).max() == 0.0


def test_cp_map_tp_reduces_to_shifted_map():
    ks = sample_random_cptp(3, 2, seed=9)
    phi = cptp_from_kraus(ks)
    LD = dissipator_from_cp_map(phi)
    assert np.abs(LD - (phi - np.eye(9))).max() < 1e-9


def test_cp_map_rejects_non_cp():
    n = 2
    swapish = np.kron(np.eye(n), np.eye(n)).astype(complex)
    swapish[0, 3] = 2.0  # hermiticity-breaking entry makes the Choi indefinite
    with pytest.raises(NotPositiveError):
        dissipator_from_cp_map(swapish - 3.0 * np.eye(4))


# -- CPTP maps ---------------------------------------------------------------

def test_unitary_kraus_spectrum_on_circle():
    rng = np.random.default_rng(3)
    H = crandn(rng, 4, 4)
    U = np.linalg.eig(H + H.conj().T)[1]
    S = cptp_from_kraus([U])
    assert np.abs(np.abs(np.linalg.eigvals(S)) - 1.0).max() < 1e-10


def test_choi_round_trip_and_kraus():
    ks = sample_random_cptp(4, 3, seed=1)
    S = cptp_from_kraus(ks)
    C = choi_of_map(S)
    assert np.abs(map_of_choi(C) - S).max() < 1e-12
    # Choi built independently from the Kraus set
    n = 4
    C2 = np.zeros((16, 16), dtype=complex)
    for K in ks.operators:
        for i in range(n):
            for j in range(n):
                E = np.zeros((n, n), dtype=complex)
                E[i, j] = 1.0
                C2 += np.kron(E, K @ E @ K.conj().T)
    assert np.abs(C - C2).max() < 1e-12
    ks2 = kraus_of_choi(C)
    assert ks2.rank == 3
    assert np.abs(cptp_from_kraus(ks2) - S).max() < 1e-10


def test_cptp_one_in_spectrum_and_radius():
    ks = sample_random_cptp(5, 4, seed=12)
    S = cptp_from_kraus(ks)
    rep = check_cptp(S)
    assert rep["ok"], rep
    assert rep["one_eigenvalue_gap"] < 1e-10


def test_tp_violation_raises():
    with pytest.raises(TracePreservationError):
        cptp_from_kraus([np.eye(2) * 0.5])


# -- model operators ---------------------------------------------------------

def test_spin_half_is_pauli_over_two():
    ops = spin_operators(0.5)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    assert np.allclose(ops["jz"], sz / 2)
    assert np.allclose(ops["jy"], sy / 2)
    assert np.allclose(ops["j2"], 0.75 * np.eye(2))


@pytest.mark.parametrize("spin", [1.0, 2.5, 10.0])
def test_spin_ladder_coefficients(spin):
    ops = spin_operators(spin)
    n = int(2 * spin) + 1
    m = spin - np.arange(n)
    ladder = ops["jplus"] @ ops["jminus"]
    assert np.allclose(np.diag(ladder).real, (spin + m) * (spin - m + 1), atol=1e-10)
    assert np.abs(ops["j2"] - spin * (spin + 1) * np.eye(n)).max() < 1e-10


def test_boson_truncated_commutator():
    ops = boson_operators(12)
    comm = ops["a"] @ ops["adag"] - ops["adag"] @ ops["a"]
    expect = np.eye(13)
    expect[-1, -1] = -12.0      # truncation artifact in the corner
    assert np.allclose(comm, expect, atol=1e-12)


def test_coherent_state_moments():
    alpha = 0.8 - 0.3j
    psi = coherent_state(alpha, 40)
    ops = boson_operators(40)
    assert abs(np.vdot(psi, ops["a"] @ psi) - alpha) < 1e-8
    assert abs(np.vdot(psi, ops["n"] @ psi).real - abs(alpha) ** 2) < 1e-8


# -- exponential -------------------------------------------------------------

def test_expm_zero():
    assert np.allclose(superop_expm(np.zeros((9, 9))), np.eye(9))


def test_expm_hamiltonian_is_conjugation():
    import scipy.linalg as sla

    H = sample_gaussian_hermitian("GUE", 4, "N", seed=21)
    E = superop_expm(hamiltonian_superop(H))
    U = sla.expm(-1j * H)
    assert np.abs(E - np.kron(U.conj(), U)).max() < 1e-10


def test_expm_amplitude_damping_closed_form():
    gamma, t = 1.0, 0.7
    sm = np.array([[0, 1], [0, 0]], dtype=complex)
    L = dissipator_from_jumps([np.sqrt(gamma) * sm])
    E = superop_expm(t * L)
    p = 1 - np.exp(-gamma * t)
    k0 = np.diag([1.0, np.sqrt(1 - p)]).astype(complex)
    k1 = np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex)
    assert np.abs(E - cptp_from_kraus([k0, k1])).max() < 1e-10


def test_expm_of_lindbladian_is_cptp():
    from dqchaos.ensembles import sample_random_lindbladian

    L = sample_random_lindbladian(4, 6, 0.5, "matrix-units", seed=4)
    rep = check_cptp(superop_expm(L), tol=1e-8)
    assert rep["choi_min_eigenvalue"] > -1e-8
    assert rep["trace_preservation"] < 1e-8


# -- validity reports --------------------------------------------------------

def test_lindblad_validity_report():
    from dqchaos.ensembles import sample_random_lindbladian

    L = sample_random_lindbladian(5, 10, 1.0, "matrix-units", seed=6)
    rep = check_lindbladian(L)
    assert rep["ok"], rep


def test_hermitian_flag_tolerance():
    A = np.eye(3) + 1e-14 * np.array([[0, 1j, 0], [0, 0, 0], [0, 0, 0]])
    assert is_hermitian(A)
    assert not is_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))
