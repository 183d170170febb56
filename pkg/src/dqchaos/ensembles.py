"""Seeded samplers for random generators of open quantum dynamics.

Gaussian Hermitian ensembles, Ginibre matrices, Wishart-normalized coupling
matrices, random Lindbladians, the lemon random-matrix model for the purely
dissipative bulk, Haar unitaries, random CPTP maps (Stinespring and Choi
routes), diluted unitaries, and random parametric quantum channels.

All samplers are pure functions of (parameters, seed) backed by counter-based
Philox streams; identical arguments give bit-identical samples.  Normalizations
are enforced per sample by exact trace rescaling, e.g. the coupling matrix is
always K = N G G^dag / Tr(G G^dag).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ._rng import stream
from .opcore import (
    HSBasis,
    KossakowskiMatrix,
    KrausSet,
    cptp_from_kraus,
    dissipator_from_kossakowski,
    hamiltonian_superop,
)

__all__ = [
    "EnsembleSpec",
    "sample",
    "sample_gaussian_hermitian",
    "sample_ginibre",
    "sample_kossakowski",
    "sample_random_lindbladian",
    "sample_lemon_rmt",
    "sample_haar_unitary",
    "sample_random_cptp",
    "sample_diluted_unitary",
    "sample_rpqc",
    "rescale_lindblad_spectrum",
]

KINDS = ("GOE", "GUE", "GinOE", "GinUE", "WishartKossakowski", "RandomLindbladian",
         "LemonRMT", "HaarUnitary", "RandomCPTP", "DilutedUnitary", "RPQC")


@dataclass
class EnsembleSpec:
    """Declarative description of a random ensemble draw."""

    kind: str
    N: int
    R: int = 0                    # rank of the coupling matrix / channel count
    alpha: float = 0.0            # Hamiltonian weight (random Lindbladians, lemon model)
    p: float = 0.0                # dilution, in [0, 1]
    d: int = 0                    # dissipative channels of the diluted map
    tau: float = 0.0              # stroboscopic period (parametric channels)
    eps: float = 0.0              # dissipation strength, in [0, 1] (parametric channels)
    seed: int = 0
    basis: str = "matrix-units"
    normalization: str = "1/N"    # Tr H^2 target for Hamiltonian parts: "1/N", "N", or float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}; expected one of {KINDS}")
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0.0 <= self.eps <= 1.0:
            raise ValueError("eps must lie in [0, 1]")
        if self.alpha < 0.0:
            raise ValueError("alpha must be nonnegative")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "EnsembleSpec":
        return cls(**d)


def sample(spec: EnsembleSpec):
    """Dispatch on spec.kind; returns the sampled object."""
    k = spec.kind
    if k in ("GOE", "GUE"):
        return sample_gaussian_hermitian(k, spec.N, spec.normalization, spec.seed)
    if k in ("GinOE", "GinUE"):
        return sample_ginibre("real" if k == "GinOE" else "complex", spec.N, spec.N, spec.seed)
    if k == "WishartKossakowski":
        d = spec.N * spec.N if spec.basis == "matrix-units" else spec.N * spec.N - 1
        return sample_kossakowski(d, spec.R or d, spec.seed)
    if k == "RandomLindbladian":
        return sample_random_lindbladian(spec.N, spec.R or None, spec.alpha, spec.basis,
                                         spec.seed, normalization=spec.normalization)
    if k == "LemonRMT":
        return sample_lemon_rmt(spec.N, spec.seed, alpha=spec.alpha)
    if k == "HaarUnitary":
        return sample_haar_unitary(spec.N, spec.seed)
    if k == "RandomCPTP":
        return sample_random_cptp(spec.N, spec.R or 2, spec.seed)
    if k == "DilutedUnitary":
        return sample_diluted_unitary(spec.N, spec.d or 4, spec.p, spec.seed)
    if k == "RPQC":
        return sample_rpqc(spec.N, spec.R or 2, spec.tau, spec.eps, spec.seed)
    raise ValueError(f"unhandled kind {k}")


# ---------------------------------------------------------------------------
# Gaussian building blocks
# ---------------------------------------------------------------------------

def _tr_h2_target(normalization, n: int) -> float:
    if normalization == "1/N":
        return 1.0 / n
    if normalization == "N":
        return float(n)
    return float(normalization)


def sample_gaussian_hermitian(kind: str, n: int, normalization="N", seed: int = 0,
                              rng=None) -> np.ndarray:
    """GOE/GUE matrix rescaled per sample so that Tr H^2 hits the target exactly.

    Under Tr H^2 = N the large-N spectral density is the radius-2 semicircle
    rho(E) = sqrt(4 - E^2)/(2 pi).
    """
    rng = rng or stream(seed)
    if kind == "GOE":
        A = rng.standard_normal((n, n))
        H = (A + A.T) / 2.0
    elif kind == "GUE":
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        H = (A + A.conj().T) / 2.0
    else:
        raise ValueError("kind must be 'GOE' or 'GUE'")
    H = H.astype(complex)
    target = _tr_h2_target(normalization, n)
    cur = np.trace(H @ H).real
    return H * np.sqrt(target / cur)


def sample_ginibre(kind: str, rows: int, cols: int, seed: int = 0, scale: float = 1.0,
                   rng=None) -> np.ndarray:
    """Ginibre matrix with i.i.d. entries of variance scale^2 (complex: split Re/Im)."""
    rng = rng or stream(seed)
    if kind == "real":
        return scale * rng.standard_normal((rows, cols))
    if kind == "complex":
        return scale / np.sqrt(2.0) * (rng.standard_normal((rows, cols))
                                       + 1j * rng.standard_normal((rows, cols)))
    raise ValueError("kind must be 'real' or 'complex'")


def sample_kossakowski(d: int, r: int, seed: int = 0, rng=None) -> KossakowskiMatrix:
    """Rank-r Wishart coupling matrix K = N G G^dag / Tr(G G^dag), G in C^{d x r}.

    d is the operator-basis dimension (N^2 for matrix units, N^2 - 1 for the
    traceless basis); the Hilbert dimension N is recovered from d.
    """
    n = int(round(np.sqrt(d)))
    if n * n != d:
        n = int(round(np.sqrt(d + 1)))
        if n * n != d + 1:
            raise ValueError(f"basis dimension {d} is neither N^2 nor N^2-1")
    rng = rng or stream(seed)
    G = sample_ginibre("complex", d, r, rng=rng)
    W = G @ G.conj().T
    K = n * W / np.trace(W).real
    return KossakowskiMatrix(K, basis_dim=d)


# ---------------------------------------------------------------------------
# random Lindbladians
# ---------------------------------------------------------------------------

def sample_random_lindbladian(n: int, r: int | None = None, alpha: float = 0.0,
                              basis_kind: str = "matrix-units", seed: int = 0,
                              normalization="1/N", return_parts: bool = False):
    """alpha * (-i[H, .]) + dissipator of a rank-r Wishart coupling matrix.

    H is GUE with Tr H^2 fixed by `normalization` (default 1/N).  The default
    operator basis is matrix units; the trace component of the jumps it admits
    scales like 1/N^2 and is negligible at large N.  basis_kind='su-traceless'
    removes it exactly.
    """
    rng = stream(seed)
    if basis_kind == "matrix-units":
        basis = HSBasis.matrix_units(n)
    elif basis_kind == "su-traceless":
        basis = HSBasis.su_traceless(n)
    else:
        raise ValueError("basis_kind must be 'matrix-units' or 'su-traceless'")
    d = basis.size
    r = d if r is None else r
    K = sample_kossakowski(d, r, rng=rng)
    LD = dissipator_from_kossakowski(K.matrix, basis)
    if alpha > 0.0:
        H = sample_gaussian_hermitian("GUE", n, normalization, rng=rng)
        LH = hamiltonian_superop(H)
        L = alpha * LH + LD
    else:
        LH = None
        L = LD
    if return_parts:
        return L, {"kossakowski": K, "hamiltonian_part": LH, "basis": basis}
    return L


def rescale_lindblad_spectrum(values, n: int, r: int | None = None, mode: str = "N"):
    """Shift-and-rescale the nontrivial Lindblad spectrum onto the universal support.

    mode='N'     : l' = N (l + 1), the full-rank scaling.
    mode='sqrtR' : l' = sqrt(R) (l + 1), a heuristic for non-maximal rank that
                   is exposed for empirical study rather than asserted.
    """
    values = np.asarray(values, dtype=complex)
    if mode == "N":
        return n * (values + 1.0)
    if mode == "sqrtR":
        if not r:
            raise ValueError("mode='sqrtR' needs the rank r")
        return np.sqrt(r) * (values + 1.0)
    raise ValueError("mode must be 'N' or 'sqrtR'")


def sample_lemon_rmt(n: int, seed: int = 0, alpha: float = 0.0) -> np.ndarray:
    """Random-matrix model of the rescaled purely dissipative bulk.

    G - (W* kron 1 + 1 kron W), with G an N^2 x N^2 real Ginibre matrix scaled
    to Tr G G^dag = N^2 (unit-radius disk) and W = C + i alpha H, where C is
    GOE with Tr C^2 = N/4 (unit-radius semicircle) and H is GUE with
    Tr H^2 = N.  alpha = 0 reproduces the lemon-shaped support; alpha = 1/2
    balances Hermitian and anti-Hermitian parts and rounds the support into a
    disk.
    """
    rng = stream(seed)
    G = sample_ginibre("real", n * n, n * n, rng=rng)
    G *= n / np.sqrt(np.sum(G * G))            # Tr G G^T = N^2 exactly
    C = sample_gaussian_hermitian("GOE", n, n / 4.0, rng=rng).real
    I = np.eye(n)
    if alpha == 0.0:
        W = C.astype(complex)
    else:
        H = sample_gaussian_hermitian("GUE", n, float(n), rng=rng)
        W = C + 1j * alpha * H
    return G.astype(complex) - (np.kron(W.conj(), I) + np.kron(I, W))


# ---------------------------------------------------------------------------
# random CPTP maps
# ---------------------------------------------------------------------------

def sample_haar_unitary(n: int, seed: int = 0, rng=None) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix."""
    rng = rng or stream(seed)
    Z = sample_ginibre("complex", n, n, rng=rng)
    Q, R = np.linalg.qr(Z)
    ph = np.diag(R)
    return Q * (ph / np.abs(ph))


def sample_random_cptp(n: int, d: int, seed: int = 0, method: str = "stinespring",
                       rng=None) -> KrausSet:
    """Random CPTP map of Kraus rank d.

    method='stinespring' draws a Haar unitary on system x d-dim environment and
    traces the environment out of U (1 kron |0>).  method='choi' draws a rank-d
    Wishart Choi operator and renormalizes its partial trace.  The two induce
    slightly different measures at finite N but agree spectrally at large N.
    """
    if d < 1:
        raise ValueError("Kraus rank must be at least 1")
    rng = rng or stream(seed)
    if method == "stinespring":
        U = sample_haar_unitary(n * d, rng=rng)
        sys_rows = np.arange(n) * d
        ops = [U[np.ix_(sys_rows + mu, sys_rows)] for mu in range(d)]
        return KrausSet(ops)
    if method == "choi":
        from .opcore import kraus_of_choi
        G = sample_ginibre("complex", n * n, d, rng=rng)
        W = G @ G.conj().T
        Y = np.einsum("iaja->ij", W.reshape(n, n, n, n))   # partial trace over output
        Yi = np.linalg.inv(_psd_sqrt(Y))
        C = np.kron(Yi, np.eye(n)) @ W @ np.kron(Yi, np.eye(n)).conj().T
        return kraus_of_choi(C)
    raise ValueError("method must be 'stinespring' or 'choi'")


def _psd_sqrt(Y: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(0.5 * (Y + Y.conj().T))
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T


def sample_diluted_unitary(n: int, d: int, p: float, seed: int = 0,
                           return_kraus: bool = False):
    """Mixture (1-p) U . U^dag + p Phi of a Haar unitary with a d-channel random
    CPTP map; the Kraus rank of the mixture is d + 1.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = stream(seed)
    U = sample_haar_unitary(n, rng=rng)
    phi = sample_random_cptp(n, d, rng=rng)
    ks = KrausSet([np.sqrt(1.0 - p) * U] + [np.sqrt(p) * K for K in phi.operators])
    S = cptp_from_kraus(ks)
    return (S, ks) if return_kraus else S


def sample_rpqc(n: int, k: int, tau: float, eps: float, seed: int = 0,
                return_kraus: bool = False):
    """Random parametric quantum channel:

        (1-eps) e^{-i tau H} rho e^{+i tau H} + eps sum_r N_r rho N_r^dag,

    with H GUE (Tr H^2 = N) and the k operators N_r from a random CPTP map.
    eps interpolates between strictly unitary (0) and fully dissipative (1);
    tau sets how far the coherent phases wind per step.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    rng = stream(seed)
    H = sample_gaussian_hermitian("GUE", n, "N", rng=rng)
    w, V = np.linalg.eigh(H)
    U = (V * np.exp(-1j * tau * w)) @ V.conj().T
    phi = sample_random_cptp(n, k, rng=rng)
    ks = KrausSet([np.sqrt(1.0 - eps) * U] + [np.sqrt(eps) * K for K in phi.operators])
    S = cptp_from_kraus(ks)
    return (S, ks) if return_kraus else S
