"""Eigen-decomposition and the spectral-statistics battery for complex spectra.

Two-dimensional nearest-neighbour spacings with local-density unfolding,
complex spacing ratios, Hermitian spacing ratios, form factors (Hermitian,
trace-of-map, and two-dimensional), per-eigenvalue condition numbers, and
spectral gaps.  Reference curves (flat 2D Poisson, sampled Ginibre) live here
as well so every statistic can be benchmarked against both universality
classes.

The dense nonsymmetric eigensolver is a pluggable backend (default LAPACK via
scipy); a backend that does not declare itself reentrant is serialized behind
a lock so ensemble sweeps remain correct in either mode.
"""

from __future__ import annotations

import importlib
import logging
import os
import threading
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
from scipy.optimize import linear_sum_assignment
from scipy.spatial import cKDTree

from .supports import (  # noqa: F401  (re-exported: same module surface as the stats battery)
    diluted_radii,
    lemon_boundary,
    lemon_cauchy_transform,
    points_inside_boundary,
    ring_disk_pc,
    semicircle_difference_density,
)

__all__ = [
    "ComplexSpectrum",
    "EigResult",
    "FormFactorCurve",
    "eigenvalues",
    "eig_full",
    "condition_estimate",
    "overlap_diagonals",
    "deduplicate",
    "nn_spacings",
    "unfolded_spacings",
    "poisson_reference_I",
    "GinibreReference",
    "ginibre_reference",
    "complex_spacing_ratios",
    "CSRResult",
    "hermitian_spacing_ratios",
    "sff",
    "dff",
    "dsff",
    "spectral_gap",
    "empirical_cdf",
    "ks_to_curve",
    "EigenSolverError",
]

log = logging.getLogger(__name__)

BACKEND_ENV = "DQCHAOS_EIG_BACKEND"
DUPLICATE_TOL = 1e-13


class EigenSolverError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# eigensolver backend
# ---------------------------------------------------------------------------

def _default_backend(matrix, want_vectors):
    if want_vectors:
        w, vl, vr = sla.eig(matrix, left=True, right=True)
        return w, vr, vl
    return sla.eigvals(matrix), None, None


_default_backend.reentrant = True

_backend_lock = threading.Lock()


def _resolve_backend():
    path = os.environ.get(BACKEND_ENV, "")
    if not path:
        return _default_backend
    modname, _, attr = path.partition(":")
    try:
        mod = importlib.import_module(modname)
        return getattr(mod, attr or "eig_backend")
    except Exception as exc:
        raise EigenSolverError(f"cannot load eigensolver backend {path!r}: {exc}") from exc


def _call_backend(matrix, want_vectors):
    backend = _resolve_backend()
    try:
        if getattr(backend, "reentrant", False):
            return backend(matrix, want_vectors)
        with _backend_lock:
            return backend(matrix, want_vectors)
    except EigenSolverError:
        raise
    except Exception as exc:
        raise EigenSolverError(f"eigensolver backend failed: {exc}") from exc


@dataclass
class EigResult:
    values: np.ndarray
    right: np.ndarray | None = None
    left: np.ndarray | None = None

    def residual(self, matrix) -> float:
        """max_k ||M v_k - w_k v_k|| / ||M||, right vectors normalized."""
        M = np.asarray(matrix, dtype=complex)
        R = self.right / np.linalg.norm(self.right, axis=0, keepdims=True)
        res = M @ R - R * self.values[None, :]
        return float(np.linalg.norm(res, axis=0).max() / max(np.linalg.norm(M, 2), 1e-300))


@dataclass
class ComplexSpectrum:
    """Eigenvalues plus provenance (ensemble spec / model parameters, sector, seed)."""

    values: np.ndarray
    source: dict = field(default_factory=dict)
    labels: list | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex).ravel()
        if not np.all(np.isfinite(self.values.view(float))):
            raise ValueError("spectrum contains non-finite values")

    def __len__(self):
        return self.values.size

    def conjugation_gap(self) -> float:
        d = np.abs(self.values[:, None] - self.values.conj()[None, :])
        return float(d.min(axis=1).max())


def eigenvalues(matrix, source: dict | None = None) -> ComplexSpectrum:
    """Spectrum of a dense operator or superoperator."""
    M = np.asarray(matrix, dtype=complex)
    if not np.all(np.isfinite(M.view(float))):
        raise ValueError("matrix contains non-finite entries")
    w, _, _ = _call_backend(M, False)
    return ComplexSpectrum(w, source=dict(source or {}))


def eig_full(matrix) -> EigResult:
    """Eigenvalues with right and left eigenvectors (columns)."""
    M = np.asarray(matrix, dtype=complex)
    w, vr, vl = _call_backend(M, True)
    if vr is None:
        raise EigenSolverError("backend did not return eigenvectors")
    return EigResult(np.asarray(w), np.asarray(vr), np.asarray(vl))


def overlap_diagonals(right, left) -> np.ndarray:
    """Diagonal eigenvector overlaps O_aa = <lt_a|lt_a><r_a|r_a>.

    Right vectors are unit-normalized and left vectors rescaled to the
    biorthonormal gauge <lt_a|r_b> = delta_ab; O_aa >= 1, with equality for
    normal matrices, and kappa_a = sqrt(O_aa) is the eigenvalue condition
    number.
    """
    R = np.asarray(right, dtype=complex)
    L = np.asarray(left, dtype=complex)
    R = R / np.linalg.norm(R, axis=0, keepdims=True)
    d = np.einsum("ia,ia->a", L.conj(), R)
    if np.abs(d).min() < 1e-300:
        raise EigenSolverError("degenerate left/right pairing; overlaps undefined")
    Ln = L / d.conj()[None, :]
    return (np.linalg.norm(Ln, axis=0) ** 2).real


def condition_estimate(matrix=None, result: EigResult | None = None) -> np.ndarray:
    """Per-eigenvalue condition numbers kappa_a = sqrt(O_aa)."""
    if result is None:
        result = eig_full(matrix)
    return np.sqrt(overlap_diagonals(result.right, result.left))


# ---------------------------------------------------------------------------
# spacings and unfolding
# ---------------------------------------------------------------------------

def deduplicate(values, tol: float = DUPLICATE_TOL):
    """Collapse exact numerical duplicates; returns (values, n_collapsed)."""
    v = np.asarray(values, dtype=complex).ravel()
    if v.size == 0:
        return v, 0
    scale = max(np.abs(v).max(), 1.0)
    order = np.lexsort((v.imag, v.real))
    sv = v[order]
    keep = np.ones(v.size, dtype=bool)
    for i in range(1, v.size):
        if abs(sv[i] - sv[i - 1]) <= tol * scale:
            keep[i] = False
    n_dropped = int((~keep).sum())
    if n_dropped:
        log.warning("collapsed %d duplicate eigenvalues (tol %.1e)", n_dropped, tol)
    return sv[keep], n_dropped


def _hull_distance(points: np.ndarray) -> np.ndarray:
    """Distance of each 2D point to the convex hull boundary of the cloud."""
    from scipy.spatial import ConvexHull

    hull = ConvexHull(points)
    verts = points[hull.vertices]
    edges = list(zip(verts, np.roll(verts, -1, axis=0)))
    d = np.full(len(points), np.inf)
    for a, b in edges:
        ab = b - a
        t = np.clip(((points - a) @ ab) / (ab @ ab), 0.0, 1.0)
        proj = a + t[:, None] * ab
        d = np.minimum(d, np.linalg.norm(points - proj, axis=1))
    return d


def nn_spacings(values, unfold: bool = True, k_loc: int = 10,
                edge_filter: bool = False, drop_real: bool = False):
    """Nearest-neighbour distances in the complex plane, optionally unfolded.

    Unfolding rescales each spacing by sqrt(rho_hat(lambda)) with rho_hat the
    k_loc-nearest-neighbour density estimate, then normalizes to unit mean, so
    Poisson clouds of any smooth density land on the same reference curve.

    edge_filter discards eigenvalues closer than two mean spacings to the
    convex hull of the spectrum; drop_real discards |Im| below one mean
    spacing (for spectra with a real-axis crest).  Both off by default.
    """
    v, _ = deduplicate(values)
    if v.size < 3:
        raise ValueError("need at least 3 distinct eigenvalues for spacings")
    pts = np.column_stack([v.real, v.imag])
    tree = cKDTree(pts)
    kq = min(max(k_loc, 1) + 1, v.size)
    dist, _ = tree.query(pts, k=kq)
    s = dist[:, 1]
    mean_s = s.mean()
    mask = np.ones(v.size, dtype=bool)
    if edge_filter:
        mask &= _hull_distance(pts) >= 2.0 * mean_s
    if drop_real:
        mask &= np.abs(v.imag) >= mean_s
    s = s[mask]
    if unfold:
        rho = (kq - 1) / (np.pi * dist[mask, kq - 1] ** 2)
        s = s * np.sqrt(rho)
        s = s / s.mean()
    if s.size == 0:
        raise ValueError("all eigenvalues removed by filtering")
    return s


def unfolded_spacings(spectra, **kwargs) -> np.ndarray:
    """Pool unfolded spacings over several spectra (each unfolded separately)."""
    return np.concatenate([nn_spacings(v, **kwargs) for v in spectra])


def poisson_reference_I(s):
    """Integrated spacing distribution of the unit-mean 2D Poisson process:
    I_P(s) = 1 - exp(-pi s^2 / 4)."""
    s = np.asarray(s, dtype=float)
    return 1.0 - np.exp(-np.pi * s * s / 4.0)


@dataclass
class GinibreReference:
    spacings: np.ndarray
    n_matrices: int
    size: int
    seed: int

    def cdf(self, s):
        return empirical_cdf(self.spacings, s)


def ginibre_reference(n_matrices: int = 20, size: int = 3600, seed: int = 0,
                      **spacing_kwargs) -> GinibreReference:
    """Pooled unfolded spacings of complex Ginibre matrices (chaotic reference)."""
    from ._rng import stream
    from .ensembles import sample_ginibre

    pooled = []
    for k in range(n_matrices):
        G = sample_ginibre("complex", size, size, rng=stream(seed, k))
        w, _, _ = _call_backend(G, False)
        pooled.append(nn_spacings(w, unfold=True, **spacing_kwargs))
    return GinibreReference(np.concatenate(pooled), n_matrices, size, seed)


def empirical_cdf(samples, x):
    samples = np.sort(np.asarray(samples, dtype=float))
    x = np.asarray(x, dtype=float)
    return np.searchsorted(samples, x, side="right") / samples.size


def ks_to_curve(samples, cdf) -> float:
    """Kolmogorov distance between an empirical sample and a reference CDF."""
    s = np.sort(np.asarray(samples, dtype=float))
    n = s.size
    ref = np.asarray(cdf(s), dtype=float)
    upper = np.abs(np.arange(1, n + 1) / n - ref).max()
    lower = np.abs(np.arange(0, n) / n - ref).max()
    return float(max(upper, lower))


# ---------------------------------------------------------------------------
# spacing ratios
# ---------------------------------------------------------------------------

@dataclass
class CSRResult:
    z: np.ndarray
    mean_r: float
    mean_cos: float
    n_duplicates: int

    @property
    def r(self):
        return np.abs(self.z)

    @property
    def theta(self):
        return np.angle(self.z)


def complex_spacing_ratios(values) -> CSRResult:
    """Complex spacing ratios z_k = (NN_k - l_k) / (NNN_k - l_k), |z| <= 1.

    Unfolding-free: invariant under shifts and rescalings of the spectrum, and
    rotations only rotate z.  Flat on the unit disk for uncorrelated spectra
    (<r> = 2/3, <cos th> = 0); chaotic spectra deplete the origin and skew the
    angular marginal negative.
    """
    v, ndup = deduplicate(values)
    if v.size < 3:
        raise ValueError("need at least 3 distinct eigenvalues for spacing ratios")
    pts = np.column_stack([v.real, v.imag])
    tree = cKDTree(pts)
    _, idx = tree.query(pts, k=3)
    nn = v[idx[:, 1]]
    nnn = v[idx[:, 2]]
    z = (nn - v) / (nnn - v)
    return CSRResult(z=z, mean_r=float(np.abs(z).mean()),
                     mean_cos=float(np.cos(np.angle(z)).mean()), n_duplicates=ndup)


def hermitian_spacing_ratios(values) -> dict:
    """Consecutive-gap ratios of a real spectrum: r_n, rtilde_n and <rtilde>."""
    e = np.sort(np.asarray(values, dtype=float).ravel())
    if e.size < 3:
        raise ValueError("need at least 3 levels")
    s = np.diff(e)
    good = (s[1:] > 0) | (s[:-1] > 0)
    r = np.divide(s[1:], s[:-1], out=np.full(s.size - 1, np.inf), where=s[:-1] > 0)
    rt = np.minimum(s[1:], s[:-1]) / np.maximum(s[1:], s[:-1])
    rt = rt[good]
    return {"r": r, "r_tilde": rt, "mean_r_tilde": float(rt.mean())}


# ---------------------------------------------------------------------------
# form factors
# ---------------------------------------------------------------------------

@dataclass
class FormFactorCurve:
    abscissa: np.ndarray
    value: np.ndarray
    n_samples: int
    kind: str = "sff"


def _as_realization_list(spectra):
    if isinstance(spectra, ComplexSpectrum):
        return [spectra.values]
    if isinstance(spectra, (list, tuple)) and len(spectra) and np.ndim(spectra[0]) > 0:
        return [s.values if isinstance(s, ComplexSpectrum) else np.asarray(s).ravel()
                for s in spectra]
    arr = np.asarray(spectra)
    if arr.ndim == 2:
        return list(arr)
    return [arr.ravel()]


def sff(spectra, t_grid) -> FormFactorCurve:
    """Spectral form factor K(t) = <|sum_j e^{-i E_j t}|^2> over realizations.

    K(0) = N^2; chaotic (rigid) spectra show the dip-ramp-plateau profile with
    plateau N, Poisson spectra decay straight to the plateau.
    """
    t = np.asarray(t_grid, dtype=float).ravel()
    reals = _as_realization_list(spectra)
    acc = np.zeros(t.size)
    for ev in reals:
        ph = np.exp(-1j * np.outer(t, np.asarray(ev, dtype=complex).real))
        acc += np.abs(ph.sum(axis=1)) ** 2
    return FormFactorCurve(t, acc / len(reals), len(reals), kind="sff")


def dff(spectra, t_grid) -> FormFactorCurve:
    """Trace form factor of a map, <sum_j lambda_j^t> at integer t.

    For a single map this equals Tr Phi^t exactly; the late-time decay is set
    by the spectral gap.
    """
    t = np.asarray(t_grid)
    if not np.allclose(t, np.round(t.real)):
        raise ValueError("map form factor is defined on integer powers")
    t = np.round(t.real).astype(int)
    reals = _as_realization_list(spectra)
    acc = np.zeros(t.size)
    for ev in reals:
        ev = np.asarray(ev, dtype=complex)
        acc += np.array([np.sum(ev ** k).real for k in t])
    return FormFactorCurve(t.astype(float), acc / len(reals), len(reals), kind="dff")


def dsff(spectra, tau_grid) -> FormFactorCurve:
    """Two-dimensional form factor at complex time tau:

        DSFF(tau) = < sum_{j,k} e^{-i [Re(l_j - l_k) Re tau + Im(l_j - l_k) Im tau]} >
                  = < |sum_j e^{-i (Re l_j Re tau + Im l_j Im tau)}|^2 >,

    real by the j<->k symmetrization; DSFF(0) = n^2 and the plateau is n.
    """
    tau = np.asarray(tau_grid, dtype=complex).ravel()
    reals = _as_realization_list(spectra)
    acc = np.zeros(tau.size)
    for ev in reals:
        ev = np.asarray(ev, dtype=complex)
        phase = np.outer(tau.real, ev.real) + np.outer(tau.imag, ev.imag)
        acc += np.abs(np.exp(-1j * phase).sum(axis=1)) ** 2
    return FormFactorCurve(tau, acc / len(reals), len(reals), kind="dsff")


# ---------------------------------------------------------------------------
# gaps
# ---------------------------------------------------------------------------

def spectral_gap(values, kind: str, zero_tol: float = 1e-8) -> float:
    """Relaxation gap.

    kind='lindblad': -max Re over eigenvalues outside the zero cluster.
    kind='map':      -log of the second-largest modulus (the largest belongs
                     to the steady state and equals 1 for a CPTP map).
    """
    v = np.asarray(values, dtype=complex).ravel()
    if kind == "lindblad":
        scale = max(np.abs(v).max(), 1.0)
        nz = v[np.abs(v) > zero_tol * scale]
        if nz.size == 0:
            return 0.0
        return float(-nz.real.max())
    if kind == "map":
        mods = np.sort(np.abs(v))
        if mods.size < 2:
            return 0.0
        return float(-np.log(mods[-2]))
    raise ValueError("kind must be 'lindblad' or 'map'")


def match_spectra(a, b) -> tuple:
    """Optimal bipartite matching of two equal-length spectra.

    Returns (permutation of b, max matched distance); used for reflection
    checks and eigenvalue-flow continuity.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        raise ValueError("spectra must have equal length to match")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty_like(cols)
    perm[rows] = cols
    return perm, float(cost[rows, cols].max())
