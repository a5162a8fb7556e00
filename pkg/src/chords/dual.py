"""Dual quermassintegrals  V~_s(K, z) = (1/n) * integral over {rho > 0} of rho_{K,z}(u)^s du."""

import numpy as np
from scipy.special import hyp2f1

from .bodies import Ball, Ellipsoid, HPolytope, VPolytope, contains, radial_many
from .constants import RHO_TOL, RIESZ_CUTOFF
from .errors import DomainError
from .estimates import Estimate
from .rng import stream


def sec_power_integral(s, t):
    """Integral of sec(psi)^s from 0 to arctan(t)."""
    return t * hyp2f1(1 - 0.5 * s, 0.5, 1.5, -t * t)


def polygon_edges(body):
    """Counter-clockwise edge data (normals, offsets, start and end points) of a 2D polytope."""
    order = body.polygon_order
    V = body.vertices
    return body.normals[order], body.offsets[order], np.roll(V, 1, axis=0), V


def polygon_vtilde(edges, Z, s, skip=None):
    """Exact V~_s(K, z) for many points z in a convex polygon.

    The plane splits into one angular sector per edge; over the sector of edge j the radial
    function is d_j sec(psi), d_j = h_j - z.n_j, which integrates in closed form.  Edges whose
    line passes through z (d_j ~ 0) subtend no angle and are dropped, which is the boundary
    convention rho > 0.  `skip` optionally gives, per point, the index of the edge it lies on.
    """
    N, h, P0, P1 = edges
    Z = np.atleast_2d(Z)
    T = np.c_[-N[:, 1], N[:, 0]]
    d = h[None, :] - Z @ N.T
    scale = max(1.0, np.abs(h).max())
    dead = d <= 1e-12 * scale
    if skip is not None:
        dead[np.arange(len(Z)), skip] = True
    dd = np.where(dead, 1.0, d)
    zt = Z @ T.T
    ta = (np.einsum("ij,ij->i", P0, T)[None, :] - zt) / dd
    tb = (np.einsum("ij,ij->i", P1, T)[None, :] - zt) / dd
    val = dd ** s * (sec_power_integral(s, tb) - sec_power_integral(s, ta))
    val[dead] = 0.0
    return 0.5 * val.sum(axis=1)


def angular_nodes_2d(breaks, nodes=16):
    """Gauss-Legendre nodes on the circle, one panel between consecutive break angles."""
    br = np.unique(np.mod(np.asarray(breaks, float), 2 * np.pi))
    if br.size == 0:
        br = np.array([0.0])
    br = np.r_[br, br[0] + 2 * np.pi]
    x, w = np.polynomial.legendre.leggauss(nodes)
    a, b = br[:-1], br[1:]
    keep = b - a > 1e-15
    a, b = a[keep], b[keep]
    th = 0.5 * (a + b)[:, None] + 0.5 * (b - a)[:, None] * x[None, :]
    W = 0.5 * (b - a)[:, None] * w[None, :]
    return th.ravel(), W.ravel()


def weighted_radial_integral_2d(body, z, s, weight=None, breaks=(), nodes=16):
    """(1/2) * integral of weight(u) rho_{K,z}(u)^s over directions with rho > 0 (2D)."""
    z = np.asarray(z, float)
    br = list(breaks)
    if isinstance(body, (HPolytope, VPolytope)):
        V = body.vertices if isinstance(body, HPolytope) else body.hrep.vertices
        D = V - z
        keep = np.linalg.norm(D, axis=1) > 1e-13
        br += list(np.arctan2(D[keep, 1], D[keep, 0]))
    th, W = angular_nodes_2d(br, nodes)
    U = np.c_[np.cos(th), np.sin(th)]
    r = radial_many(body, z, U)
    pos = r > RHO_TOL
    val = np.zeros_like(r)
    val[pos] = r[pos] ** s
    if weight is not None:
        val = val * weight(U)
    return 0.5 * float((W * val).sum()), th.size


def _sphere_radial(body, z, s, grid):
    r = radial_many(body, z, grid.directions)
    pos = r > RHO_TOL
    val = np.zeros_like(r)
    val[pos] = r[pos] ** s
    return float((grid.weights * val).sum()) / grid.dim


def dual_quermass(body, z, q, method="radial-quadrature", resolution=None, seed=0,
                  n_samples=200_000):
    """Estimate of the q-th dual quermassintegral of the body with respect to z."""
    if not q > 0:
        raise DomainError("q must be positive")
    z = np.asarray(z, float)
    if not contains(body, z)[0]:
        raise DomainError("z lies outside the body")
    n = body.dim
    if method == "radial-quadrature":
        if n == 2:
            if isinstance(body, VPolytope):
                body = body.hrep
            if isinstance(body, HPolytope):
                edges = polygon_edges(body)
                val = float(polygon_vtilde(edges, z[None], q)[0])
                return Estimate(val, 0.0, len(edges[0]), seed, method)
            val, m = weighted_radial_integral_2d(body, z, q, nodes=resolution or 64,
                                                 breaks=np.linspace(0, 2 * np.pi, 17)[:-1])
            return Estimate(val, 0.0, m, seed, method)
        from .grids import sphere_grid
        k = resolution or 64
        grid = sphere_grid(k, 2 * k)
        return Estimate(_sphere_radial(body, z, q, grid), 0.0, len(grid), seed, method)
    if method == "riesz-mc":
        return _riesz_mc(body, z, q, seed, n_samples)
    raise DomainError(f"unknown method {method!r}")


def bounding_box(body):
    if isinstance(body, VPolytope):
        V = body.vertices
    elif isinstance(body, HPolytope):
        V = body.vertices
    else:
        ext = np.linalg.norm(body.matrix, axis=1)
        return body.center - ext, body.center + ext
    return V.min(axis=0), V.max(axis=0)


def _riesz_mc(body, z, q, seed, n_samples):
    """(q/n) Vol(K) E|x - z|^{q-n} with x uniform in K."""
    from .polytope import volume
    n = body.dim
    lo, hi = bounding_box(body)
    rng = stream(seed, 0)
    pts = []
    got = 0
    while got < n_samples:
        X = lo + (hi - lo) * rng.random((max(1024, 2 * (n_samples - got)), n))
        X = X[contains(body, X, tol=0.0)]
        pts.append(X)
        got += len(X)
    X = np.vstack(pts)[:n_samples]
    r = np.linalg.norm(X - z, axis=1)
    r = r[r >= RIESZ_CUTOFF]
    vals = (q / n) * volume(body) * r ** (q - n)
    return Estimate(vals.mean(), vals.std(ddof=1) / np.sqrt(vals.size), vals.size, seed, "riesz-mc")
