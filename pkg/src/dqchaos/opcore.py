"""Exact construction and validation of open-quantum-dynamics generators.

Lindblad generators are built in three equivalent representations (Kossakowski
form on a Hilbert-Schmidt basis, jump-operator form, and shifted-CP-map form),
CPTP maps in Kraus and Choi form.  Everything is dense and works on plain
complex numpy arrays; thin dataclasses carry role/convention metadata where it
matters (serialization, validation).

Conventions, fixed repo-wide:
  * hbar = 1.
  * column-stacking vectorization: vec(rho)[j*N + i] = rho[i, j], so that
    vec(A rho B) = (B^T kron A) vec(rho).
  * a superoperator is an N^2 x N^2 matrix acting on vectorized operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

__all__ = [
    "Operator",
    "Superoperator",
    "KossakowskiMatrix",
    "HSBasis",
    "KrausSet",
    "vectorize",
    "devectorize",
    "left_multiply_superop",
    "right_multiply_superop",
    "sandwich_superop",
    "hamiltonian_superop",
    "dissipator_from_jumps",
    "dissipator_from_kossakowski",
    "kossakowski_to_jumps",
    "dissipator_from_cp_map",
    "cptp_from_kraus",
    "choi_of_map",
    "map_of_choi",
    "kraus_of_choi",
    "dual_superop",
    "apply_superop",
    "spin_operators",
    "boson_operators",
    "coherent_state",
    "superop_expm",
    "is_hermitian",
    "preserves_hermiticity",
    "check_lindbladian",
    "check_cptp",
    "trace_distance",
    "DimensionError",
    "NotHermitianError",
    "NotPositiveError",
    "TracePreservationError",
]

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-10          # eigenvalues >= -PSD_TOL * (largest eigenvalue) accepted
RANK_CUTOFF = 1e-12      # kossakowski_to_jumps keeps eigenvalues > RANK_CUTOFF * trace
TP_TOL = 1e-8


class DimensionError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class NotPositiveError(ValueError):
    pass


class TracePreservationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass
class Operator:
    """Dense complex N x N matrix with a role tag (hamiltonian, jump, state, ...)."""

    matrix: np.ndarray
    role: str = "generic"

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionError(f"operator must be square, got shape {self.matrix.shape}")
        if not np.all(np.isfinite(self.matrix.view(float))):
            raise ValueError("operator entries must be finite")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass
class Superoperator:
    """N^2 x N^2 matrix acting on column-vectorized operators."""

    matrix: np.ndarray
    convention: str = "column"
    role: str = "superoperator"

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        n2 = self.matrix.shape[0]
        if self.matrix.ndim != 2 or self.matrix.shape[1] != n2:
            raise DimensionError(f"superoperator must be square, got shape {self.matrix.shape}")
        n = int(round(np.sqrt(n2)))
        if n * n != n2:
            raise DimensionError(f"superoperator side {n2} is not a perfect square")
        if self.convention != "column":
            raise ValueError("only the column-vectorization convention is supported")

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass
class KossakowskiMatrix:
    """Hermitian PSD matrix of dissipative couplings on a Hilbert-Schmidt basis."""

    matrix: np.ndarray
    basis_dim: int = 0

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.basis_dim == 0:
            self.basis_dim = self.matrix.shape[0]
        if self.matrix.shape != (self.basis_dim, self.basis_dim):
            raise DimensionError("Kossakowski matrix shape does not match basis dimension")

    @property
    def rank(self) -> int:
        w = np.linalg.eigvalsh(self.matrix)
        return int(np.sum(w > RANK_CUTOFF * max(np.trace(self.matrix).real, 1e-300)))

    def validate(self):
        if not is_hermitian(self.matrix):
            raise NotHermitianError("Kossakowski matrix is not Hermitian")
        w = np.linalg.eigvalsh(self.matrix)
        if w.min() < -PSD_TOL * max(w.max(), 0.0):
            raise NotPositiveError(f"Kossakowski matrix has negative eigenvalue {w.min():.3e}")

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass
class HSBasis:
    """Orthonormal Hilbert-Schmidt operator basis, Tr(F_n F_m^dag) = delta_nm.

    kinds:
      'matrix-units'  : E_ab = |a><b|, flat index a*N + b, dimension N^2.
      'su-traceless'  : generalized Gell-Mann generators (traceless), dimension
                        N^2 - 1; the identity component is deliberately absent
                        so jump operators built on it carry no Hamiltonian part.
    """

    kind: str
    dim: int                       # Hilbert-space dimension N
    elements: list = field(default_factory=list)

    @classmethod
    def matrix_units(cls, n: int) -> "HSBasis":
        els = []
        for a in range(n):
            for b in range(n):
                E = np.zeros((n, n), dtype=complex)
                E[a, b] = 1.0
                els.append(E)
        return cls(kind="matrix-units", dim=n, elements=els)

    @classmethod
    def su_traceless(cls, n: int) -> "HSBasis":
        els = []
        for a in range(n):
            for b in range(a + 1, n):
                S = np.zeros((n, n), dtype=complex)
                S[a, b] = S[b, a] = 1.0 / np.sqrt(2.0)
                els.append(S)
                A = np.zeros((n, n), dtype=complex)
                A[a, b] = -1j / np.sqrt(2.0)
                A[b, a] = 1j / np.sqrt(2.0)
                els.append(A)
        for l in range(1, n):
            D = np.zeros((n, n), dtype=complex)
            D[:l, :l] = np.eye(l)
            D[l, l] = -l
            els.append(D / np.sqrt(l * (l + 1)))
        return cls(kind="su-traceless", dim=n, elements=els)

    @property
    def size(self) -> int:
        return len(self.elements)

    def stacked(self) -> np.ndarray:
        return np.stack(self.elements)

    def validate(self, tol: float = HERMITICITY_TOL):
        B = self.stacked().reshape(self.size, -1)
        G = B @ B.conj().T
        if np.abs(G - np.eye(self.size)).max() > tol:
            raise ValueError("basis is not orthonormal under the Hilbert-Schmidt inner product")


@dataclass
class KrausSet:
    """Kraus operators of a CP map; trace preserving iff sum K^dag K = 1."""

    operators: list

    def __post_init__(self):
        self.operators = [np.asarray(K, dtype=complex) for K in self.operators]
        dims = {K.shape for K in self.operators}
        if len(dims) > 1:
            raise DimensionError(f"inconsistent Kraus dimensions: {dims}")

    @property
    def rank(self) -> int:
        return len(self.operators)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def tp_defect(self) -> float:
        acc = sum(K.conj().T @ K for K in self.operators)
        return float(np.abs(acc - np.eye(self.dim)).max())

    @property
    def trace_preserving(self) -> bool:
        return self.tp_defect() <= TP_TOL


# ---------------------------------------------------------------------------
# vectorization and elementary superoperators
# ---------------------------------------------------------------------------

def vectorize(A) -> np.ndarray:
    """Column-stacking vec: vec(rho)[j*N+i] = rho[i,j]."""
    A = np.asarray(A, dtype=complex)
    return A.reshape(-1, order="F")


def devectorize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise DimensionError(f"vector of length {v.size} is not a vectorized square matrix")
    return v.reshape((n, n), order="F")


def left_multiply_superop(A) -> np.ndarray:
    """Superoperator of rho -> A rho."""
    A = np.asarray(A, dtype=complex)
    return np.kron(np.eye(A.shape[0]), A)


def right_multiply_superop(B) -> np.ndarray:
    """Superoperator of rho -> rho B."""
    B = np.asarray(B, dtype=complex)
    return np.kron(B.T, np.eye(B.shape[0]))


def sandwich_superop(A, B) -> np.ndarray:
    """Superoperator of rho -> A rho B, i.e. (B^T kron A)."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise DimensionError("sandwich factors must share dimensions")
    return np.kron(B.T, A)


def apply_superop(S, rho) -> np.ndarray:
    return devectorize(np.asarray(S, dtype=complex) @ vectorize(rho))


def dual_superop(S) -> np.ndarray:
    """Superoperator of the dual map: Tr[A^dag Phi(B)] = Tr[(Phi^dual(A))^dag B]."""
    return np.asarray(S, dtype=complex).conj().T


def is_hermitian(A, tol: float = HERMITICITY_TOL) -> bool:
    A = np.asarray(A)
    scale = max(np.abs(A).max(), 1e-300)
    return bool(np.abs(A - A.conj().T).max() <= tol * scale)


# ---------------------------------------------------------------------------
# Lindblad constructions
# ---------------------------------------------------------------------------

def hamiltonian_superop(H) -> np.ndarray:
    """Coherent part -i[H, .] as -i(1 kron H - H^T kron 1).

    The spectrum consists of all pairwise eigenvalue differences of H times -i,
    with an N-fold degenerate zero from the diagonal basis elements.
    """
    H = np.asarray(H, dtype=complex)
    if not is_hermitian(H):
        raise NotHermitianError("Hamiltonian must be Hermitian")
    n = H.shape[0]
    I = np.eye(n)
    return -1j * (np.kron(I, H) - np.kron(H.T, I))


def dissipator_from_jumps(jumps) -> np.ndarray:
    """Dissipator sum_a (L rho L^dag - {L^dag L, rho}/2) as a superoperator."""
    ops = jumps.operators if isinstance(jumps, KrausSet) else [np.asarray(L, dtype=complex) for L in jumps]
    if not ops:
        raise ValueError("need at least one jump operator")
    n = ops[0].shape[0]
    I = np.eye(n)
    S = np.zeros((n * n, n * n), dtype=complex)
    for L in ops:
        if L.shape != (n, n):
            raise DimensionError("jump operators must share dimensions")
        LdL = L.conj().T @ L
        S += np.kron(L.conj(), L) - 0.5 * np.kron(I, LdL) - 0.5 * np.kron(LdL.T, I)
    return S


def _kossakowski_check(K) -> np.ndarray:
    K = np.asarray(K, dtype=complex)
    if not is_hermitian(K, tol=1e-10):
        raise NotHermitianError("Kossakowski matrix must be Hermitian")
    w = np.linalg.eigvalsh(K)
    if w.min() < -PSD_TOL * max(w.max(), 0.0):
        raise NotPositiveError(f"Kossakowski matrix not PSD: min eigenvalue {w.min():.3e}")
    return K


def dissipator_from_kossakowski(K, basis: HSBasis) -> np.ndarray:
    """Dissipator sum_mn K_mn (F_m rho F_n^dag - {F_n^dag F_m, rho}/2).

    This is the trace-preserving form consistent with the jump representation
    obtained from K = Y Y^dag, L_a = sum_m Y_ma F_m.  For the complete
    matrix-unit basis the quadratic form is assembled by an index reshuffle of
    K instead of the O(d^2) sum over basis pairs.
    """
    K = _kossakowski_check(np.asarray(K))
    n = basis.dim
    if K.shape[0] != basis.size:
        raise DimensionError(f"K is {K.shape[0]}-dim but basis has {basis.size} elements")
    I = np.eye(n)
    if basis.kind == "matrix-units":
        # Psi[(c,a),(d,b)] = K[(a,b),(c,d)] with flat row index c*N+a
        K4 = K.reshape(n, n, n, n)
        psi = K4.transpose(2, 0, 3, 1).reshape(n * n, n * n)
        X = np.einsum("abad->db", K4)          # sum_mn K_mn F_n^dag F_m
    else:
        B = basis.stacked()                     # (d, n, n)
        M1 = np.einsum("mn,mkl->nkl", K, B)     # sum_m K_mn F_m
        psi4 = np.einsum("nij,nkl->ikjl", B.conj(), M1)
        psi = psi4.reshape(n * n, n * n)
        X = np.einsum("nji,njk->ik", B.conj(), M1)   # F_n^dag = conj(F_n)^T
    return psi - 0.5 * np.kron(I, X) - 0.5 * np.kron(X.T, I)


def kossakowski_to_jumps(K, basis: HSBasis) -> list:
    """Jump operators L_a = sum_m Y_ma F_m from K = Y Y^dag.

    The number of jumps equals the rank of K: eigenvalues below
    RANK_CUTOFF * Tr K are treated as zero.
    """
    K = _kossakowski_check(np.asarray(K))
    if K.shape[0] != basis.size:
        raise DimensionError(f"K is {K.shape[0]}-dim but basis has {basis.size} elements")
    w, U = np.linalg.eigh(K)
    cutoff = RANK_CUTOFF * max(np.trace(K).real, 0.0)
    B = basis.stacked()
    jumps = []
    for a in range(len(w) - 1, -1, -1):        # descending weight
        if w[a] <= cutoff:
            break
        y = np.sqrt(w[a]) * U[:, a]
        jumps.append(np.tensordot(y, B, axes=(0, 0)))
    return jumps


def dissipator_from_cp_map(psi) -> np.ndarray:
    """Dissipator from a CP (not necessarily TP) map Psi:

        L_D(rho) = Psi(rho) - (Psi^dual(1) rho + rho Psi^dual(1)) / 2.

    Raises NotPositiveError if the Choi operator of Psi is not PSD.
    """
    S = np.asarray(psi, dtype=complex)
    n = int(round(np.sqrt(S.shape[0])))
    C = choi_of_map(S)
    w = np.linalg.eigvalsh(0.5 * (C + C.conj().T))
    if w.min() < -PSD_TOL * max(w.max(), 1e-300):
        raise NotPositiveError(f"map is not CP: Choi min eigenvalue {w.min():.3e}")
    X = devectorize(dual_superop(S) @ vectorize(np.eye(n)))
    X = 0.5 * (X + X.conj().T)                 # Psi^dual(1) is Hermitian for CP Psi
    I = np.eye(n)
    return S - 0.5 * np.kron(I, X) - 0.5 * np.kron(X.T, I)


# ---------------------------------------------------------------------------
# CPTP maps, Kraus and Choi forms
# ---------------------------------------------------------------------------

def cptp_from_kraus(ks, check_tp: bool = True) -> np.ndarray:
    """Superoperator sum_mu (conj(K_mu) kron K_mu) of a Kraus map."""
    ks = ks if isinstance(ks, KrausSet) else KrausSet(list(ks))
    if check_tp:
        defect = ks.tp_defect()
        if defect > TP_TOL:
            raise TracePreservationError(f"Kraus set violates trace preservation by {defect:.3e}")
    n = ks.dim
    S = np.zeros((n * n, n * n), dtype=complex)
    for K in ks.operators:
        S += np.kron(K.conj(), K)
    return S


def choi_of_map(S) -> np.ndarray:
    """Choi matrix C[(i,a),(j,b)] = Phi(|i><j|)[a,b] (input on the first factor)."""
    S = np.asarray(S, dtype=complex)
    n = int(round(np.sqrt(S.shape[0])))
    return S.reshape(n, n, n, n).transpose(3, 1, 2, 0).reshape(n * n, n * n)


def map_of_choi(C) -> np.ndarray:
    """Inverse of choi_of_map; the reshuffle is an involution."""
    return choi_of_map(C)


def kraus_of_choi(C, tol: float = RANK_CUTOFF) -> KrausSet:
    """Kraus operators from the Choi eigendecomposition, one per nonzero weight."""
    C = np.asarray(C, dtype=complex)
    n = int(round(np.sqrt(C.shape[0])))
    w, V = np.linalg.eigh(0.5 * (C + C.conj().T))
    if w.min() < -PSD_TOL * max(w.max(), 1e-300):
        raise NotPositiveError(f"Choi matrix not PSD: min eigenvalue {w.min():.3e}")
    cutoff = tol * max(np.trace(C).real, 0.0)
    ops = []
    for k in range(len(w) - 1, -1, -1):
        if w[k] <= cutoff:
            break
        ops.append(np.sqrt(w[k]) * V[:, k].reshape(n, n).T)   # v[(i,a)] = K[a,i]
    return KrausSet(ops)


# ---------------------------------------------------------------------------
# model operator builders
# ---------------------------------------------------------------------------

def spin_operators(spin: float) -> dict:
    """Spin operators on the (2S+1)-dim space, basis ordered by descending m.

    Returns {'jz','jy','jminus','jplus','j2'};  J-|m> = sqrt((S+m)(S-m+1)) |m-1>.
    """
    twos = int(round(2 * spin))
    if abs(2 * spin - twos) > 1e-12 or twos < 1:
        raise ValueError("spin must be a positive half-integer")
    n = twos + 1
    m = spin - np.arange(n)
    jz = np.diag(m).astype(complex)
    am = (spin + m) * (spin - m + 1)
    jminus = np.zeros((n, n), dtype=complex)
    for i in range(n - 1):
        jminus[i + 1, i] = np.sqrt(am[i])
    jplus = jminus.conj().T
    jy = (jplus - jminus) / 2j
    j2 = spin * (spin + 1) * np.eye(n, dtype=complex)
    return {"jz": jz, "jy": jy, "jminus": jminus, "jplus": jplus, "j2": j2}


def boson_operators(n_max: int) -> dict:
    """Truncated bosonic mode with levels 0..n_max; [a, a^dag] = 1 except the corner."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    dim = n_max + 1
    a = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        a[k - 1, k] = np.sqrt(k)
    adag = a.conj().T
    return {"a": a, "adag": adag, "n": adag @ a}


def coherent_state(alpha: complex, n_max: int) -> np.ndarray:
    """Truncated coherent state, renormalized on the Fock cutoff."""
    k = np.arange(n_max + 1)
    logc = k * np.log(np.abs(alpha) + 1e-300) - 0.5 * np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, n_max + 1)))))
    c = np.exp(logc) * np.exp(1j * k * np.angle(alpha))
    c *= np.exp(-0.5 * np.abs(alpha) ** 2)
    return c / np.linalg.norm(c)


# ---------------------------------------------------------------------------
# exponential and validity checks
# ---------------------------------------------------------------------------

def superop_expm(S) -> np.ndarray:
    """exp of a superoperator via backward-error-controlled scaling-and-squaring.

    Eigendecomposition-based exponentials are avoided on purpose: generators of
    open dynamics are non-normal and their eigenproblem may be ill-conditioned.
    """
    S = np.asarray(S, dtype=complex)
    if not np.all(np.isfinite(S.view(float))):
        raise ValueError("superoperator entries must be finite")
    return sla.expm(S)


def preserves_hermiticity(S, rng=None, tol: float = 1e-10) -> bool:
    """Probe: a Hermiticity-preserving superoperator maps Hermitian to Hermitian."""
    S = np.asarray(S, dtype=complex)
    n = int(round(np.sqrt(S.shape[0])))
    rng = rng or np.random.default_rng(0)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = A + A.conj().T
    out = apply_superop(S, rho)
    return bool(np.abs(out - out.conj().T).max() <= tol * max(np.abs(out).max(), 1e-300))


def check_lindbladian(L, eigenvalues=None, re_tol: float = 1e-8) -> dict:
    """Validity report for a Lindblad generator.

    Checks: vec(1)^T L = 0 (trace preservation), spectrum closed under complex
    conjugation, max Re <= re_tol, and 0 in the spectrum.
    """
    L = np.asarray(L, dtype=complex)
    n = int(round(np.sqrt(L.shape[0])))
    scale = max(np.abs(L).max(), 1e-300)
    tp = float(np.abs(vectorize(np.eye(n)) @ L).max()) / scale
    ev = np.linalg.eigvals(L) if eigenvalues is None else np.asarray(eigenvalues)
    esc = max(np.abs(ev).max(), 1e-300)
    conj_gap = _conjugation_closure_gap(ev) / esc
    report = {
        "trace_preservation": tp,
        "conjugation_closure": conj_gap,
        "max_real_part": float(ev.real.max()),
        "zero_eigenvalue_gap": float(np.abs(ev).min()) / esc,
        "ok": bool(tp < 1e-10 and conj_gap < 1e-7 and ev.real.max() <= re_tol
                   and np.abs(ev).min() / esc < 1e-7),
    }
    return report


def check_cptp(S, eigenvalues=None, tol: float = 1e-9) -> dict:
    """Validity report for a CPTP map: Choi PSD, TP, spectral radius, 1 in spectrum."""
    S = np.asarray(S, dtype=complex)
    n = int(round(np.sqrt(S.shape[0])))
    C = choi_of_map(S)
    w = np.linalg.eigvalsh(0.5 * (C + C.conj().T))
    choi_min = float(w.min() / max(w.max(), 1e-300))
    tp = float(np.abs(vectorize(np.eye(n)) @ S - vectorize(np.eye(n))).max())
    ev = np.linalg.eigvals(S) if eigenvalues is None else np.asarray(eigenvalues)
    radius = float(np.abs(ev).max())
    one_gap = float(np.abs(ev - 1.0).min())
    conj_gap = _conjugation_closure_gap(ev) / max(radius, 1e-300)
    report = {
        "choi_min_eigenvalue": choi_min,
        "trace_preservation": tp,
        "spectral_radius": radius,
        "one_eigenvalue_gap": one_gap,
        "conjugation_closure": conj_gap,
        "ok": bool(choi_min > -tol and tp < 1e-7 and radius <= 1 + tol
                   and one_gap < 1e-7 and conj_gap < 1e-7),
    }
    return report


def _conjugation_closure_gap(ev: np.ndarray) -> float:
    """max over eigenvalues of the distance to the nearest conjugated eigenvalue."""
    ev = np.asarray(ev)
    d = np.abs(ev[:, None] - ev.conj()[None, :])
    return float(d.min(axis=1).max())


def trace_distance(rho, sigma) -> float:
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    return float(0.5 * np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))).sum())
