"""Convex body representations and their exact primitives: support, radial function, X-ray."""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _hull
from .constants import MEMBERSHIP_TOL, ORTHO_TOL, SINGULAR_TOL, UNIT_TOL
from .errors import DomainError, PreconditionError, RepresentationError
from . import jsonio


def _unit(u):
    u = np.asarray(u, float)
    if abs(np.linalg.norm(u) - 1.0) > UNIT_TOL:
        raise PreconditionError("direction must be a unit vector")
    return u


@dataclass(frozen=True, eq=False)
class HPolytope:
    """Intersection of halfspaces normals[i].x <= offsets[i].

    Redundant halfspaces are allowed; `active` marks the facets that touch the body.
    """
    normals: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        N = np.atleast_2d(np.asarray(self.normals, float))
        h = np.asarray(self.offsets, float).ravel()
        if N.shape[0] != h.size:
            raise RepresentationError("one offset per normal is required")
        nrm = np.linalg.norm(N, axis=1)
        if np.any(np.abs(nrm - 1) > 1e-9):
            raise RepresentationError("normals must be unit vectors")
        N = N / nrm[:, None]
        _hull.check_bounded(N)
        N.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "normals", N)
        object.__setattr__(self, "offsets", h)

    @property
    def dim(self):
        return self.normals.shape[1]

    @cached_property
    def _data(self):
        return _hull.halfspace_data(self.normals, self.offsets)

    @property
    def vertices(self):
        return self._data[1]

    @property
    def active(self):
        """Boolean mask of facets that touch the body."""
        m = np.zeros(len(self.offsets), bool)
        m[self._data[0]] = True
        return m

    @property
    def polygon_order(self):
        """2D only: active facet indices counter-clockwise; vertex k joins edges k and k+1."""
        if self.dim != 2:
            raise RepresentationError("polygon order is defined in 2D only")
        return self._data[0]

    def canonical(self):
        act = self.active
        return HPolytope(self.normals[act], self.offsets[act])

    def to_dict(self):
        return {"type": "hpolytope", "normals": self.normals, "offsets": self.offsets}


@dataclass(frozen=True, eq=False)
class VPolytope:
    vertices: np.ndarray

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, float))
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)

    @property
    def dim(self):
        return self.vertices.shape[1]

    @cached_property
    def hrep(self):
        from scipy.spatial import ConvexHull, QhullError
        try:
            hull = ConvexHull(self.vertices)
        except QhullError as exc:
            raise RepresentationError(f"vertices do not span a body: {exc}") from None
        eq = hull.equations
        key = np.round(eq, 12)
        _, idx = np.unique(key, axis=0, return_index=True)
        eq = eq[np.sort(idx)]
        return HPolytope(eq[:, :-1], -eq[:, -1])

    def to_dict(self):
        return {"type": "vpolytope", "vertices": self.vertices}


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    """center + rotation @ diag(semi_axes) @ (unit ball); axes sorted ascending."""
    semi_axes: np.ndarray
    rotation: np.ndarray = None
    center: np.ndarray = None

    def __post_init__(self):
        a = np.asarray(self.semi_axes, float).ravel()
        n = a.size
        R = np.eye(n) if self.rotation is None else np.asarray(self.rotation, float)
        c = np.zeros(n) if self.center is None else np.asarray(self.center, float).ravel()
        if np.any(a <= 0):
            raise RepresentationError("semi-axes must be positive")
        if R.shape != (n, n) or np.abs(R.T @ R - np.eye(n)).max() > ORTHO_TOL * 10:
            raise RepresentationError("rotation must be orthogonal")
        order = np.argsort(a, kind="stable")
        a, R = a[order], R[:, order]
        for x in (a, R, c):
            x.setflags(write=False)
        object.__setattr__(self, "semi_axes", a)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "center", c)

    @property
    def dim(self):
        return self.semi_axes.size

    @property
    def matrix(self):
        return self.rotation * self.semi_axes[None, :]

    def to_dict(self):
        return {"type": "ellipsoid", "semi_axes": self.semi_axes, "rotation": self.rotation,
                "center": self.center}


@dataclass(frozen=True, eq=False)
class Ball:
    radius: float
    center: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        if not self.radius > 0:
            raise RepresentationError("radius must be positive")
        c = np.asarray(self.center, float).ravel()
        c.setflags(write=False)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "center", c)

    @property
    def dim(self):
        return self.center.size

    @property
    def semi_axes(self):
        return np.full(self.dim, self.radius)

    @property
    def rotation(self):
        return np.eye(self.dim)

    @property
    def matrix(self):
        return self.radius * np.eye(self.dim)

    def to_dict(self):
        return {"type": "ball", "radius": self.radius, "center": self.center}


def ball(radius=1.0, n=2):
    return Ball(radius, np.zeros(n))


def cube(n=2, half=1.0):
    N = np.vstack([np.eye(n), -np.eye(n)])
    return HPolytope(N, np.full(2 * n, float(half)))


def regular_polygon(m, circumradius=None, inradius=1.0, phase=0.0):
    th = phase + 2 * np.pi * np.arange(m) / m
    N = np.c_[np.cos(th), np.sin(th)]
    if circumradius is not None:
        inradius = circumradius * np.cos(np.pi / m)
    return HPolytope(N, np.full(m, float(inradius)))


def _quadric(body):
    return body.matrix, body.center


def from_dict(d):
    t = d["type"]
    if t == "hpolytope":
        return HPolytope(np.array(d["normals"], float), np.array(d["offsets"], float))
    if t == "vpolytope":
        return VPolytope(np.array(d["vertices"], float))
    if t == "ellipsoid":
        return Ellipsoid(np.array(d["semi_axes"], float), np.array(d["rotation"], float),
                         np.array(d["center"], float))
    if t == "ball":
        return Ball(float(d["radius"]), np.array(d["center"], float))
    raise RepresentationError(f"unknown body type {t!r}")


def dumps(body):
    return jsonio.dumps(body.to_dict())


def loads(text):
    return from_dict(jsonio.loads(text))


# ---------------------------------------------------------------- support

def support_many(body, U):
    U = np.atleast_2d(np.asarray(U, float))
    if isinstance(body, HPolytope):
        return (U @ body.vertices.T).max(axis=1)
    if isinstance(body, VPolytope):
        return (U @ body.vertices.T).max(axis=1)
    A, c = _quadric(body)
    return U @ c + np.linalg.norm(U @ A, axis=1)


def support_eval(body, u):
    return float(support_many(body, _unit(u)[None, :])[0])


def argmax_vertex(body, u, tol=1e-12):
    """Boundary point attaining max x.u; on ties the lexicographically smallest vertex."""
    u = np.asarray(u, float)
    if isinstance(body, (HPolytope, VPolytope)):
        V = body.vertices
        s = V @ u
        cand = V[s >= s.max() - tol * max(1.0, abs(s.max()))]
        order = np.lexsort(cand.T[::-1])
        return cand[order[0]]
    A, c = _quadric(body)
    w = A.T @ u
    return c + A @ (w / np.linalg.norm(w))


def circumradius(body):
    """Radius of the smallest origin-centred ball containing the body."""
    if isinstance(body, (HPolytope, VPolytope)):
        return float(np.linalg.norm(body.vertices, axis=1).max())
    return float(np.linalg.norm(body.center) + body.semi_axes.max())


def contains(body, x, tol=MEMBERSHIP_TOL):
    x = np.atleast_2d(np.asarray(x, float))
    if isinstance(body, VPolytope):
        body = body.hrep
    if isinstance(body, HPolytope):
        return np.all(x @ body.normals.T <= body.offsets + tol, axis=1)
    A, c = _quadric(body)
    y = np.linalg.solve(A, (x - c).T).T
    return np.linalg.norm(y, axis=1) <= 1 + tol


# ---------------------------------------------------------------- chords

def _interval_many(body, Z, U):
    """Parameter interval [lo, hi] of the line z + t u inside the body (lo > hi when empty)."""
    if isinstance(body, VPolytope):
        body = body.hrep
    if isinstance(body, HPolytope):
        N, h = body.normals, body.offsets
        lo = np.empty(len(Z))
        hi = np.empty(len(Z))
        step = max(1, 2_000_000 // max(1, len(h)))
        for s in range(0, len(Z), step):
            A = U[s:s + step] @ N.T
            b = h[None, :] - Z[s:s + step] @ N.T
            with np.errstate(divide="ignore", invalid="ignore"):
                lam = b / A
            pos, neg = A > 1e-15, A < -1e-15
            hi_ = np.where(pos, lam, np.inf).min(axis=1)
            lo_ = np.where(neg, lam, -np.inf).max(axis=1)
            blocked = np.any(~pos & ~neg & (b < 0), axis=1)
            hi_[blocked] = -np.inf
            lo[s:s + step], hi[s:s + step] = lo_, hi_
        return lo, hi
    A, c = _quadric(body)
    Ainv = np.linalg.inv(A)
    w = (Z - c) @ Ainv.T
    d = U @ Ainv.T
    a = (d * d).sum(1)
    b = (w * d).sum(1)
    cc = (w * w).sum(1) - 1
    disc = b * b - a * cc
    sq = np.sqrt(np.maximum(disc, 0))
    lo = (-b - sq) / a
    hi = (-b + sq) / a
    empty = disc < 0
    lo[empty], hi[empty] = 1.0, -1.0
    return lo, hi


def xray_many(body, Z, U):
    Z = np.atleast_2d(np.asarray(Z, float))
    U = np.atleast_2d(np.asarray(U, float))
    lo, hi = _interval_many(body, Z, U)
    return np.maximum(hi - lo, 0.0)


def xray(body, z, u):
    """Length of the chord of the body on the line z + R u."""
    return float(xray_many(body, np.asarray(z, float)[None], _unit(u)[None])[0])


def radial_many(body, z, U):
    z = np.asarray(z, float)
    U = np.atleast_2d(np.asarray(U, float))
    lo, hi = _interval_many(body, np.broadcast_to(z, U.shape), U)
    return np.maximum(hi, 0.0)


def radial_eval(body, z, u):
    """Exit parameter of the ray z + lambda u, lambda >= 0."""
    z = np.asarray(z, float)
    if not contains(body, z)[0]:
        raise DomainError("z lies outside the body")
    return float(radial_many(body, z, _unit(u)[None])[0])


# ---------------------------------------------------------------- linear maps

def linear_image(body, M):
    """The body M K in the same representation family."""
    M = np.asarray(M, float)
    n = body.dim
    if M.shape != (n, n) or abs(np.linalg.det(M)) <= SINGULAR_TOL:
        raise DomainError("linear map must be an invertible n x n matrix")
    if isinstance(body, HPolytope):
        G = body.normals @ np.linalg.inv(M)      # rows are (M^{-T} n)^T
        s = np.linalg.norm(G, axis=1)
        return HPolytope(G / s[:, None], body.offsets / s)
    if isinstance(body, VPolytope):
        return VPolytope(body.vertices @ M.T)
    A = M @ body.matrix
    Uo, S, _ = np.linalg.svd(A)
    c = M @ body.center
    if S.max() - S.min() <= 1e-12 * S.max():
        return Ball(float(S.mean()), c)
    return Ellipsoid(S, Uo, c)
