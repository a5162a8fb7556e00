"""Antipodally closed direction grids on the sphere and support vectors on them."""

from dataclasses import dataclass

import numpy as np

from .constants import GRID_MASS_RTOL
from .errors import DomainError, RepresentationError
from .special import sphere_area


def _antipode_index(U, tol=1e-9):
    """Index of -u for every u (exact match up to tol)."""
    key = np.round(U / tol).astype(np.int64)
    lookup = {tuple(k): i for i, k in enumerate(key)}
    out = np.empty(len(U), int)
    for i, k in enumerate(-key):
        j = lookup.get(tuple(k))
        if j is None:
            # rounding can split a point across cells; fall back to nearest
            j = int(np.argmin(np.linalg.norm(U + U[i], axis=1)))
            if np.linalg.norm(U[j] + U[i]) > 1e-8:
                raise RepresentationError("grid is not closed under u -> -u")
        out[i] = j
    return out


@dataclass(frozen=True, eq=False)
class SphericalGrid:
    directions: np.ndarray
    weights: np.ndarray
    zonal: bool = False
    rings: np.ndarray = None        # ring label per direction (zonal grids)

    def __post_init__(self):
        U = np.atleast_2d(np.asarray(self.directions, float))
        w = np.asarray(self.weights, float).ravel()
        if U.shape[0] != w.size:
            raise RepresentationError("one weight per direction")
        if np.abs(np.linalg.norm(U, axis=1) - 1).max() > 1e-12:
            raise RepresentationError("directions must be unit vectors")
        if np.any(w <= 0):
            raise RepresentationError("weights must be positive")
        n = U.shape[1]
        area = sphere_area(n)
        if abs(w.sum() - area) > GRID_MASS_RTOL * area:
            raise RepresentationError(f"weights sum to {w.sum()!r}, expected {area!r}")
        anti = _antipode_index(U)
        if np.abs(w[anti] - w).max() > 1e-12 * w.max():
            raise RepresentationError("antipodal directions need equal weights")
        rings = None if self.rings is None else np.asarray(self.rings, int)
        if self.zonal:
            if rings is None:
                raise RepresentationError("zonal grid needs ring labels")
            for r in np.unique(rings):
                t = U[rings == r, -1]
                if np.ptp(t) > 1e-12:
                    raise RepresentationError("ring members must share the polar angle")
        for x in (U, w, anti):
            x.setflags(write=False)
        object.__setattr__(self, "directions", U)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "rings", rings)
        object.__setattr__(self, "_anti", anti)

    @property
    def dim(self):
        return self.directions.shape[1]

    def __len__(self):
        return len(self.weights)

    @property
    def antipode(self):
        return self._anti

    def orbits(self):
        """Orbit label per direction under the symmetries of even, rotationally symmetric data.

        Directions are identified when they share |u_n| (same ring up to the antipodal map) and,
        in 2D, that is the mirror x1 -> -x1 combined with u -> -u.
        """
        t = np.round(np.abs(self.directions[:, -1]), 12)
        _, lab = np.unique(t, return_inverse=True)
        return lab

    def to_dict(self):
        d = {"directions": self.directions, "weights": self.weights, "zonal": bool(self.zonal)}
        if self.rings is not None:
            d["rings"] = self.rings
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(np.array(d["directions"], float), np.array(d["weights"], float),
                   bool(d.get("zonal", False)), d.get("rings"))


def circle_grid(N=128):
    """Equiangular grid theta_k = (k + 1/2) 2 pi / N; the circle's Gauss rule.

    It is antipodal for even N, mirror symmetric in both axes and avoids the coordinate axes.
    Rings pair (+-sin, cos) directions, the circle's version of constant polar angle.
    """
    if N % 4:
        raise DomainError("circle grid size must be a multiple of 4")
    th = 2 * np.pi * (np.arange(N) + 0.5) / N
    U = np.c_[np.cos(th), np.sin(th)]
    w = np.full(N, 2 * np.pi / N)
    _, rings = np.unique(np.round(U[:, 1], 12), return_inverse=True)
    return SphericalGrid(U, w, zonal=True, rings=rings)


def sphere_grid(n_rings=32, n_phi=64):
    """Gauss-Legendre rings in cos(theta) times uniform azimuth on S^2."""
    if n_rings % 2 or n_phi % 2:
        raise DomainError("ring and azimuth counts must be even for antipodal closure")
    t, wt = np.polynomial.legendre.leggauss(n_rings)
    phi = 2 * np.pi * (np.arange(n_phi) + 0.5) / n_phi
    T, P = np.meshgrid(t, phi, indexing="ij")
    s = np.sqrt(1 - T ** 2)
    U = np.c_[(s * np.cos(P)).ravel(), (s * np.sin(P)).ravel(), T.ravel()]
    w = np.repeat(wt, n_phi) * (2 * np.pi / n_phi)
    rings = np.repeat(np.arange(n_rings), n_phi)
    return SphericalGrid(U, w, zonal=True, rings=rings)


def zonal_grid(n, rings=64, n_phi=None):
    if n == 2:
        return circle_grid(2 * rings)
    if n == 3:
        return sphere_grid(rings, n_phi or 2 * rings)
    raise DomainError("zonal grids are provided for n = 2, 3")


def pushforward(grid, A):
    """Image directions u -> Au/|Au| and the Jacobian-transformed weights w |det A| / |Au|^n.

    The weights are the exact change of variables applied node by node, so they sum to the
    sphere area only up to quadrature error; they are returned as plain arrays.
    """
    A = np.asarray(A, float)
    Y = grid.directions @ A.T
    r = np.linalg.norm(Y, axis=1)
    w = grid.weights * abs(np.linalg.det(A)) / r ** grid.dim
    return Y / r[:, None], w


@dataclass(frozen=True, eq=False)
class SupportVector:
    grid: SphericalGrid
    values: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.values, float).ravel()
        if h.size != len(self.grid):
            raise RepresentationError("one value per grid direction")
        if np.any(~(h > 0)):
            raise DomainError("support values must be positive")
        h.setflags(write=False)
        object.__setattr__(self, "values", h)

    def scaled(self, t):
        return SupportVector(self.grid, t * self.values)

    def to_dict(self):
        return {"grid": self.grid.to_dict(), "values": self.values}
