"""Chord integrals I_q and chord measures F_q, F_{p,q}."""

import numpy as np

from .bodies import Ball, Ellipsoid, HPolytope, VPolytope, circumradius, radial_many, xray_many
from .constants import RHO_TOL
from .dual import polygon_edges, polygon_vtilde
from .errors import DomainError, PreconditionError
from .estimates import DiscreteMeasure, Estimate, LineSamplerConfig
from .rng import map_chunks
from .special import ball_chord_integral, omega

DEFAULT_NODES = 8


# ---------------------------------------------------------------- Crofton Monte Carlo

def _line_sample(rng, size, n, R):
    """Uniform directions u and uniform points x in the radius-R disk of u-perp."""
    U = rng.standard_normal((size, n))
    U /= np.linalg.norm(U, axis=1)[:, None]
    G = rng.standard_normal((size, n))
    G -= (G * U).sum(1)[:, None] * U
    G /= np.linalg.norm(G, axis=1)[:, None]
    rad = R * rng.random(size) ** (1.0 / (n - 1))
    return G * rad[:, None], U


def crofton_samples(body, q, cfg, threads=1):
    """Per-chunk (sum, sum of squares, count) of X^q; the reduction order is fixed by chunk index."""
    n = body.dim
    R = cfg.bounding_radius
    rc = circumradius(body)
    if R is None:
        R = rc
    elif R < rc * (1 - 1e-12):
        raise PreconditionError(f"bounding radius {R} is smaller than the circumradius {rc}")

    def chunk(rng, size):
        X, U = _line_sample(rng, size, n, R)
        v = xray_many(body, X, U) ** q if q > 0 else (xray_many(body, X, U) > 0).astype(float)
        return v.sum(), (v * v).sum(), size

    return map_chunks(chunk, cfg.n_samples, cfg.seed, threads), R


def chord_integral_crofton(body, q, cfg=None, threads=1):
    """Monte Carlo I_q: kappa_{n-1} R^{n-1} * mean(X^q) over uniform lines meeting the R-disk."""
    if q < 0:
        raise DomainError("q must be nonnegative")
    cfg = cfg or LineSamplerConfig()
    parts, R = crofton_samples(body, q, cfg, threads)
    s = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    m = sum(p[2] for p in parts)
    mean = s / m
    var = max(s2 / m - mean * mean, 0.0) * m / (m - 1)
    scale = omega(body.dim - 1) * R ** (body.dim - 1)
    return Estimate(scale * mean, scale * np.sqrt(var / m), m, cfg.seed, "crofton-mc")


def chord_integral_closed_form(body, q):
    if isinstance(body, Ball):
        return Estimate(ball_chord_integral(body.dim, q, body.radius), 0.0, 1, 0, "closed-form")
    raise DomainError("closed form is available for balls only")


# ---------------------------------------------------------------- chord measure, n = 2

def _as_hpolytope(body):
    if isinstance(body, VPolytope):
        return body.hrep
    if not isinstance(body, HPolytope):
        raise DomainError("a polytope is required")
    return body


def _polygon_chord_measure(body, q, nodes, facets=None):
    order = body.polygon_order
    edges = polygon_edges(body)
    N, h, P0, P1 = edges
    m = len(order)
    idx = np.arange(m) if facets is None else np.flatnonzero(np.isin(order, facets))
    L = np.linalg.norm(P1 - P0, axis=1)
    x, w = np.polynomial.legendre.leggauss(nodes)
    s = 0.5 * (x + 1)
    Z = (P0[idx, None, :] + s[None, :, None] * (P1 - P0)[idx, None, :]).reshape(-1, 2)
    own = np.repeat(idx, nodes)
    Vt = polygon_vtilde(edges, Z, q - 1, skip=own).reshape(len(idx), nodes)
    F = np.zeros(len(body.offsets))
    F[order[idx]] = 2 * q / omega(2) * L[idx] * (Vt @ w) / 2
    return F


# ---------------------------------------------------------------- chord measure, n = 3

def _triangle_rule(k):
    """Collapsed Gauss-Legendre rule on the reference triangle (0,0),(1,0),(0,1)."""
    x, w = np.polynomial.legendre.leggauss(k)
    a = 0.5 * (x + 1)
    A, B = np.meshgrid(a, a, indexing="ij")
    WA, WB = np.meshgrid(w, w, indexing="ij")
    xi = A
    eta = B * (1 - A)
    W = 0.25 * WA * WB * (1 - A)
    return np.c_[xi.ravel(), eta.ravel()], W.ravel()


def _hemisphere_rule(normal, rings=16, n_phi=32):
    """Directions on the open hemisphere {u.normal < 0} and their weights."""
    t, wt = np.polynomial.legendre.leggauss(2 * rings)
    t, wt = t[t > 0], wt[t > 0]
    phi = 2 * np.pi * (np.arange(n_phi) + 0.5) / n_phi
    T, P = np.meshgrid(t, phi, indexing="ij")
    s = np.sqrt(1 - T ** 2)
    e3 = -np.asarray(normal, float)
    a = np.cross(e3, [1.0, 0, 0])
    if np.linalg.norm(a) < 0.5:
        a = np.cross(e3, [0, 1.0, 0])
    a /= np.linalg.norm(a)
    b = np.cross(e3, a)
    U = (s * np.cos(P)).ravel()[:, None] * a + (s * np.sin(P)).ravel()[:, None] * b \
        + T.ravel()[:, None] * e3
    W = np.repeat(wt, n_phi) * (2 * np.pi / n_phi)
    return U, W


def _polytope3_chord_measure(body, q, nodes, rings=16):
    from ._hull import order_facet
    V = body.vertices
    Nn, h = body.normals, body.offsets
    F = np.zeros(len(h))
    tri_pts, tri_w = _triangle_rule(nodes)
    scale = max(1.0, np.abs(V).max())
    for i in np.flatnonzero(body.active):
        on = np.abs(V @ Nn[i] - h[i]) <= 1e-9 * scale
        if on.sum() < 3:
            continue
        P = order_facet(V[on], Nn[i])
        c0 = P.mean(axis=0)
        dirs, dw = _hemisphere_rule(Nn[i], rings, 2 * rings)
        total = 0.0
        for a, b in zip(P, np.roll(P, -1, axis=0)):
            e1, e2 = a - c0, b - c0
            area2 = np.linalg.norm(np.cross(e1, e2))
            Z = c0 + tri_pts[:, :1] * e1 + tri_pts[:, 1:] * e2
            vt = np.empty(len(Z))
            for k, z in enumerate(Z):
                r = radial_many(body, z, dirs)
                r = np.where(r > RHO_TOL, r, 0.0)
                vt[k] = (dw * r ** (q - 1)).sum() / 3
            total += area2 * (tri_w * vt).sum()
        F[i] = 2 * q / omega(3) * total
    return F


def chord_measure_polytope(body, q, resolution=None, facets=None):
    """Chord measure F_q as point masses on the facet normals (zero on inactive facets)."""
    if not q > 0:
        raise DomainError("q must be positive")
    body = _as_hpolytope(body)
    if body.dim == 2:
        F = _polygon_chord_measure(body, q, resolution or DEFAULT_NODES, facets)
    elif body.dim == 3:
        F = _polytope3_chord_measure(body, q, resolution or 4)
    else:
        raise DomainError("chord measures are implemented for n = 2, 3")
    return DiscreteMeasure(body.normals, F)


def lp_chord_measure(body, q, p, resolution=None):
    """F_{p,q} = h^{1-p} F_q."""
    body = _as_hpolytope(body)
    act = body.active
    if np.any(body.offsets[act] <= 0):
        raise DomainError("origin must be interior")
    F = chord_measure_polytope(body, q, resolution)
    h = np.where(act, body.offsets, 1.0)
    return DiscreteMeasure(body.normals, np.where(act, h ** (1 - p) * F.weights, 0.0))


def chord_integral_boundary(body, q, resolution=None):
    """I_q = (n+q-1)^{-1} * sum_i h_i F_q,i."""
    body = _as_hpolytope(body)
    act = body.active
    if np.any(body.offsets[act] <= 0):
        raise DomainError("origin must be interior")
    F = chord_measure_polytope(body, q, resolution)
    val = float((body.offsets[act] * F.weights[act]).sum()) / (body.dim + q - 1)
    nodes = (resolution or (DEFAULT_NODES if body.dim == 2 else 4)) ** (body.dim - 1)
    return Estimate(val, 0.0, int(act.sum()) * nodes, 0, "boundary")
