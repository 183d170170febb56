"""Numerical symmetry checkers and sector decomposition for non-Hermitian generators.

Antiunitary symmetries are represented by their unitary part U together with a
conjugation marker; the operator action on a matrix M is

    T-type (antiunitary, commutes/anticommutes with M):   U conj(M) U^dag
    C-type (antiunitary, acts through the adjoint of M):  U M^T U^dag
    P      (unitary, commutes/anticommutes):              U M U^dag
    Q-type (unitary, acts through the adjoint):           U M^dag U^dag

(the C-type transpose is what 'antiunitary acting on M^dag' reduces to once
the conjugation inside the antiunitary is carried out).  All checks are
residual-based with a single tolerance; we verify declared symmetries rather
than search the full non-Hermitian classification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectra import eig_full, match_spectra

__all__ = [
    "SymmetryOp",
    "SectorDecomposition",
    "check_symmetry",
    "spectrum_reflection_check",
    "block_decompose",
    "overlap_matrix",
    "induced_conjugation_superop",
    "CHECK_TOL",
]

CHECK_TOL = 1e-8
ANTIUNITARY_KINDS = ("T+", "T-", "C+", "C-")
UNITARY_KINDS = ("P", "Q+", "Q-")
KINDS = ANTIUNITARY_KINDS + UNITARY_KINDS


@dataclass
class SymmetryOp:
    """A declared symmetry: kind, unitary part, and the square it should have."""

    kind: str
    unitary: np.ndarray
    square: int = 1
    sign: int = 0          # +1 commuting / -1 anticommuting; 0 = default per kind

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        self.unitary = np.asarray(self.unitary, dtype=complex)
        if self.sign == 0:
            self.sign = -1 if self.kind.endswith("-") else +1
        if self.kind in ANTIUNITARY_KINDS and self.square not in (+1, -1):
            raise ValueError("antiunitary square must be +1 or -1")

    @property
    def antiunitary(self) -> bool:
        return self.kind in ANTIUNITARY_KINDS

    def validate(self, tol: float = 1e-10) -> dict:
        """Check unitarity of U and the declared square."""
        U = self.unitary
        unit = float(np.abs(U.conj().T @ U - np.eye(U.shape[0])).max())
        if self.antiunitary:
            sq = U @ U.conj()          # (U K)^2 = U conj(U)
        else:
            sq = U @ U
        sq_res = float(np.abs(sq - self.square * np.eye(U.shape[0])).max())
        return {"unitarity": unit, "square_residual": sq_res,
                "ok": unit <= tol and sq_res <= 1e-8}


def _symmetry_image(M: np.ndarray, sym: SymmetryOp) -> np.ndarray:
    U = sym.unitary
    k = sym.kind[0]
    if k == "T":
        core = M.conj()
    elif k == "C":
        core = M.T
    elif k == "P":
        core = M
    else:                               # Q
        core = M.conj().T
    return U @ core @ U.conj().T


def check_symmetry(M, sym: SymmetryOp, tol: float = CHECK_TOL) -> dict:
    """Residual ||U sigma(M) U^dag - sign * M|| / ||M||; pass iff below tol."""
    M = np.asarray(M, dtype=complex)
    if M.shape != sym.unitary.shape:
        raise ValueError(f"dimension mismatch: M is {M.shape}, U is {sym.unitary.shape}")
    image = _symmetry_image(M, sym)
    scale = max(np.linalg.norm(M), 1e-300)
    residual = float(np.linalg.norm(image - sym.sign * M) / scale)
    return {"kind": sym.kind, "square": sym.square, "residual": residual,
            "ok": residual < tol}


def spectrum_reflection_check(values, kind: str, tol: float = 1e-7) -> dict:
    """Match a spectrum against its symmetry image.

    kind='T+' : conj(spectrum)      (reflection across the real axis)
    kind='T-' : -conj(spectrum)     (reflection across the imaginary axis)
    kind='C-' : -spectrum           (reflection through the origin)

    Pass iff the optimal matching distance is below tol * max|lambda|.
    """
    v = np.asarray(values, dtype=complex).ravel()
    if kind == "T+":
        target = v.conj()
    elif kind == "T-":
        target = -v.conj()
    elif kind == "C-":
        target = -v
    else:
        raise ValueError("kind must be 'T+', 'T-' or 'C-'")
    _, dist = match_spectra(v, target)
    scale = max(np.abs(v).max(), 1.0)
    return {"kind": kind, "max_match_distance": dist, "scale": scale,
            "ok": dist < tol * scale}


def induced_conjugation_superop(U) -> np.ndarray:
    """Superoperator of rho -> U rho U^dag in the column-vectorization convention."""
    U = np.asarray(U, dtype=complex)
    return np.kron(U.conj(), U)


@dataclass
class SectorDecomposition:
    """Simultaneous eigenspaces of a commuting unitary action on operator space."""

    isometries: list                    # V_k with orthonormal columns
    labels: list                        # eigenphase of the unitary action per sector
    dims: list

    @property
    def n_sectors(self) -> int:
        return len(self.isometries)

    def projector(self, k: int) -> np.ndarray:
        V = self.isometries[k]
        return V @ V.conj().T

    def block(self, matrix, k: int) -> np.ndarray:
        V = self.isometries[k]
        return V.conj().T @ np.asarray(matrix, dtype=complex) @ V

    def sector_spectra(self, matrix) -> list:
        return [np.linalg.eigvals(self.block(matrix, k)) for k in range(self.n_sectors)]


def block_decompose(L, U, commute_tol: float = CHECK_TOL,
                    angle_tol: float = 1e-6) -> SectorDecomposition:
    """Decompose operator space into invariant sectors of a weak symmetry.

    U is a unitary on states; the induced action S_U = conj(U) kron U must
    commute with the superoperator L (checked, residual below commute_tol).
    Sectors are the eigenphase clusters of S_U (clustered within angle_tol
    radians); the union of the sector spectra equals the full spectrum.
    """
    L = np.asarray(L, dtype=complex)
    SU = induced_conjugation_superop(U)
    if SU.shape != L.shape:
        raise ValueError("U does not act on the state space of L")
    comm = np.linalg.norm(SU @ L - L @ SU) / max(np.linalg.norm(L), 1e-300)
    if comm > commute_tol:
        raise ValueError(f"induced action does not commute with the generator "
                         f"(residual {comm:.3e} > {commute_tol:.1e})")
    w, V = np.linalg.eig(SU)
    angles = np.angle(w)
    order = np.argsort(angles)
    # circular clustering: split at gaps, merge the wrap-around pair
    sorted_angles = angles[order]
    gaps = np.diff(sorted_angles)
    breaks = np.nonzero(gaps > angle_tol)[0]
    groups = np.split(order, breaks + 1)
    if len(groups) > 1 and (2 * np.pi - (sorted_angles[-1] - sorted_angles[0])) <= angle_tol:
        groups[0] = np.concatenate([groups[-1], groups[0]])
        groups = groups[:-1]
    isos, labels, dims = [], [], []
    for g in groups:
        Q, _ = np.linalg.qr(V[:, g])           # orthonormalize within the eigenspace
        isos.append(Q)
        labels.append(float(np.angle(w[g].mean())))
        dims.append(len(g))
    order2 = np.argsort(labels)
    return SectorDecomposition([isos[i] for i in order2],
                               [labels[i] for i in order2],
                               [dims[i] for i in order2])


def overlap_matrix(right, left) -> np.ndarray:
    """Eigenvector overlap matrix O_ab = <lt_a|lt_b><r_b|r_a>.

    Gauge: right vectors unit-normalized, left vectors biorthonormal,
    <lt_a|r_b> = delta_ab.  Diagonal entries are real and >= 1 for simple
    eigenvalues of a diagonalizable matrix; for a normal matrix O is the
    identity pattern.
    """
    R = np.asarray(right, dtype=complex)
    L = np.asarray(left, dtype=complex)
    R = R / np.linalg.norm(R, axis=0, keepdims=True)
    d = np.einsum("ia,ia->a", L.conj(), R)
    Ln = L / d.conj()[None, :]
    return (Ln.conj().T @ Ln) * (R.conj().T @ R).T


def overlap_matrix_of(matrix) -> np.ndarray:
    res = eig_full(matrix)
    return overlap_matrix(res.right, res.left)
