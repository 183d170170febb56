"""Analytic spectral supports: difference density, lemon boundary, ring radii.

Complete elliptic integrals are computed by arithmetic-geometric-mean
iteration (parameter convention K(m), E(m) with m = k^2), valid for complex m
away from the cut m in [1, inf).  The AGM branch is fixed at every step by
choosing the square root closest to the arithmetic mean, which reproduces the
principal branch on the cut plane.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "elliptic_ke",
    "elliptic_k",
    "elliptic_e",
    "semicircle_density",
    "semicircle_difference_density",
    "lemon_cauchy_transform",
    "lemon_boundary",
    "points_inside_boundary",
    "diluted_radii",
    "ring_disk_pc",
    "RootTraceError",
]


class RootTraceError(RuntimeError):
    """Boundary tracing found no sign change along a ray."""


def elliptic_ke(m, tol: float = 1e-15, maxit: int = 80):
    """(K(m), E(m)) by AGM; m may be complex (off the [1, inf) cut).

    At m = 1, K diverges and E(1) = 1; K is returned as inf there.
    """
    m = complex(m)
    if m == 1.0:
        return complex(np.inf), 1.0 + 0j
    a = 1.0 + 0j
    b = np.sqrt(1.0 - m)
    c = np.sqrt(m)
    csum = 0.5 * c * c
    p = 1.0
    for _ in range(maxit):
        an = 0.5 * (a + b)
        bn = np.sqrt(a * b)
        if abs(an - bn) > abs(an + bn):
            bn = -bn
        cn = 0.5 * (a - b)
        p *= 2.0
        csum += 0.5 * p * cn * cn
        a, b = an, bn
        if abs(cn) < tol * abs(a):
            break
    K = np.pi / (2.0 * a)
    return K, K * (1.0 - csum)


def elliptic_k(m):
    return elliptic_ke(m)[0]


def elliptic_e(m):
    return elliptic_ke(m)[1]


def semicircle_density(e, radius: float = 2.0):
    """Wigner semicircle rho(E) = 2 sqrt(R^2 - E^2) / (pi R^2)."""
    e = np.asarray(e, dtype=float)
    return 2.0 * np.sqrt(np.clip(radius * radius - e * e, 0.0, None)) / (np.pi * radius * radius)


def semicircle_difference_density(omega):
    """Density of the difference of two levels drawn from radius-2 semicircles.

    rho(w) = [(16 + w^2) E(1 - w^2/16) - 2 w^2 K(1 - w^2/16)] / (6 pi^2) on
    |w| <= 4 and zero outside; this is the classical self-convolution of the
    radius-2 semicircle, the bulk density of the coherent part of a random
    generator along the imaginary axis.  rho(0) = 8 / (3 pi^2).
    """
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    out = np.zeros_like(w)
    inside = np.abs(w) < 4.0
    for idx in np.nonzero(inside)[0]:
        x = w[idx]
        m = 1.0 - x * x / 16.0
        if m == 1.0:
            out[idx] = 8.0 / (3.0 * np.pi ** 2)    # w^2 K term vanishes, E(1) = 1
            continue
        K, E = elliptic_ke(m)
        out[idx] = ((16.0 + x * x) * E.real - 2.0 * x * x * K.real) / (6.0 * np.pi ** 2)
    out = np.clip(out, 0.0, None)
    return out if np.ndim(omega) else float(out[0])


def lemon_cauchy_transform(z) -> complex:
    """Cauchy transform G(z) of the self-convolution of two radius-1 semicircles:

        G(z) = 2z - (2z / 3 pi) [(4 + z^2) E(4/z^2) + (4 - z^2) K(4/z^2)],

    analytic off the real segment [-2, 2] and G(z) ~ 1/z at infinity.  The
    elliptic-parameter argument 4/z^2 only touches the K/E cut for z on that
    segment, so the principal AGM branch is the correct analytic continuation
    everywhere the boundary solver evaluates it.
    """
    z = complex(z)
    K, E = elliptic_ke(4.0 / (z * z))
    return 2.0 * z - (2.0 * z / (3.0 * np.pi)) * ((4.0 + z * z) * E + (4.0 - z * z) * K)


def _boundary_objective(z: complex) -> float:
    # Im[z + G(z)] = Im(z) (1 - integral nu(dt)/|z-t|^2): sign flips on the
    # support boundary of the free convolution with a unit-radius Ginibre.
    return (z + lemon_cauchy_transform(z)).imag


def lemon_boundary(resolution: int = 256, r_min: float = 1e-3, r_max: float = 6.0,
                   bisect_iters: int = 70) -> np.ndarray:
    """Closed boundary polyline of the universal lemon-shaped support.

    Rays are marched from the origin; along each ray the sign change of
    Im[z + G(z)] is bisected.  The curve is mirror-symmetric about the real
    axis by construction (lower half mirrored from the upper half) and is
    returned as an ordered closed polyline of complex points.
    """
    thetas = np.linspace(0.0, np.pi, resolution // 2 + 1)[1:-1]
    upper = [_trace_ray(t, r_min, r_max, bisect_iters) for t in thetas]
    tip_right = _real_axis_tip(bisect_iters)
    pts = [complex(tip_right)] + [r * np.exp(1j * t) for r, t in zip(upper, thetas)] + [complex(-tip_right)]
    lower = [p.conjugate() for p in reversed(pts[1:-1])]
    curve = np.array(pts + lower + [pts[0]], dtype=complex)
    return curve


def _trace_ray(theta: float, r_min: float, r_max: float, iters: int) -> float:
    f = lambda r: _boundary_objective(r * np.exp(1j * theta))
    lo, hi = r_min, r_max
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if flo * fhi > 0.0:
        raise RootTraceError(
            f"no sign change of Im[z + G(z)] along ray theta={theta:.6f} "
            f"(f({lo})={flo:.3e}, f({hi})={fhi:.3e})")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _real_axis_tip(iters: int) -> float:
    # theta -> 0 limit of the ray crossing: on the real axis the condition
    # becomes 1 + G'(x) = 0 for x beyond the deterministic support edge 2;
    # when 1 + G' never changes sign there, the boundary pinches into a cusp
    # exactly at the edge (the boundary height vanishes with the density).
    def g(x):
        h = 1e-7
        return 1.0 + ((lemon_cauchy_transform(x + h) - lemon_cauchy_transform(x - h)) / (2 * h)).real

    lo, hi = 2.0 + 1e-7, 6.0
    glo, ghi = g(lo), g(hi)
    if glo * ghi > 0.0:
        return 2.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if glo * g(mid) <= 0.0:
            hi = mid
        else:
            lo, glo = mid, g(mid)
    return 0.5 * (lo + hi)


def points_inside_boundary(points, dilate: float = 1.0, resolution: int = 512) -> np.ndarray:
    """Boolean mask: which complex points lie inside the (dilated) lemon boundary.

    Uses the radial parametrization r*(theta) of the boundary, which is
    star-shaped about the origin.
    """
    points = np.asarray(points, dtype=complex).ravel()
    thetas = np.linspace(0.0, np.pi, resolution + 1)[1:-1]
    radii = np.array([_trace_ray(t, 1e-3, 6.0, 60) for t in thetas])
    tip = _real_axis_tip(60)
    grid_t = np.concatenate(([0.0], thetas, [np.pi]))
    grid_r = np.concatenate(([tip], radii, [tip]))
    t = np.abs(np.angle(points))
    r_bound = np.interp(t, grid_t, grid_r)
    return np.abs(points) <= dilate * r_bound


def diluted_radii(p: float, d: int):
    """Inner and outer spectral radii of a diluted unitary:

        R_pm = sqrt((1-p)^2 d pm p^2) / sqrt(d).

    Past the ring-disk transition the inner expression goes negative; R_- is
    then 0 and the support is a disk (flagged in the third return value).
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    outer = np.sqrt(((1.0 - p) ** 2 * d + p * p) / d)
    inner_sq = ((1.0 - p) ** 2 * d - p * p) / d
    disk = inner_sq <= 0.0
    inner = 0.0 if disk else float(np.sqrt(inner_sq))
    return float(inner), float(outer), bool(disk)


def ring_disk_pc(d: int) -> float:
    """Dilution at which the inner radius vanishes: p_c = sqrt(d)/(1 + sqrt(d))."""
    if d < 1:
        raise ValueError("d must be at least 1")
    s = np.sqrt(d)
    return float(s / (1.0 + s))
