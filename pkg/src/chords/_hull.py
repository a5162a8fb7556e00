"""Halfspace intersection through polar duality.

For halfspaces n_i.x <= h_i with an interior point c, the points n_i/(h_i - n_i.c) have a convex
hull whose vertices are exactly the active halfspaces and whose facets are the vertices of the
intersection.  One hull primitive therefore gives both the canonical facet set and the vertex set.
"""

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from .errors import DegeneracyError, RepresentationError


def interior_point(normals, offsets):
    """Chebyshev centre of the halfspace system; raises if the system is empty or unbounded."""
    if np.all(offsets > 0):
        return np.zeros(normals.shape[1])
    n = normals.shape[1]
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A = np.c_[normals, np.linalg.norm(normals, axis=1)]
    res = linprog(c, A_ub=A, b_ub=offsets, bounds=[(None, None)] * n + [(0, None)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        raise DegeneracyError("halfspace system has empty interior")
    return res.x[:n]


def check_bounded(normals):
    """Normals must not lie in a closed hemisphere, i.e. 0 is interior to their convex hull."""
    n = normals.shape[1]
    if normals.shape[0] <= n or np.linalg.matrix_rank(normals) < n:
        raise RepresentationError("normals do not span the space")
    try:
        hull = ConvexHull(normals)
    except QhullError as exc:
        raise RepresentationError(f"normals are degenerate: {exc}") from None
    if np.any(hull.equations[:, -1] > -1e-12):
        raise RepresentationError("normals lie in a closed hemisphere; the body is unbounded")


def _polygon(normals, offsets, c):
    d = offsets - normals @ c
    pts = normals / d[:, None]
    hull = ConvexHull(pts)
    act = np.asarray(hull.vertices)             # counter-clockwise in 2D
    N, h = normals[act], d[act]
    N2, h2 = np.roll(N, -1, axis=0), np.roll(h, -1)
    det = N[:, 0] * N2[:, 1] - N[:, 1] * N2[:, 0]
    x = (h * N2[:, 1] - h2 * N[:, 1]) / det
    y = (N[:, 0] * h2 - N2[:, 0] * h) / det
    return act, np.c_[x, y] + c


def halfspace_data(normals, offsets):
    """Return (active indices, vertices).

    In 2D the active indices are in counter-clockwise order and vertex k is the corner shared by
    active edges k and k+1.  In higher dimension vertices are unique but unordered.
    """
    normals = np.asarray(normals, float)
    offsets = np.asarray(offsets, float)
    c = interior_point(normals, offsets)
    n = normals.shape[1]
    if n == 2:
        return _polygon(normals, offsets, c)
    d = offsets - normals @ c
    pts = normals / d[:, None]
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegeneracyError(str(exc)) from None
    act = np.unique(hull.vertices)
    eq = hull.equations                          # a.y + b = 0, b < 0 for facets facing away from 0
    V = -eq[:, :-1] / eq[:, -1:]
    scale = max(1.0, np.abs(V).max())
    key = np.round(V / scale, 9)
    _, idx = np.unique(key, axis=0, return_index=True)
    return act, V[np.sort(idx)] + c


def polygon_area_centroid(P):
    x, y = P[:, 0], P[:, 1]
    x1, y1 = np.roll(x, -1), np.roll(y, -1)
    cr = x * y1 - x1 * y
    A = cr.sum() / 2
    if abs(A) < 1e-300:
        return 0.0, P.mean(axis=0)
    c = np.array([((x + x1) * cr).sum(), ((y + y1) * cr).sum()]) / (6 * A)
    return A, c


def order_facet(points, normal):
    """Sort coplanar 3D points counter-clockwise around their mean, seen from outside."""
    m = points.mean(axis=0)
    a = np.cross(normal, [1.0, 0, 0])
    if np.linalg.norm(a) < 0.5:
        a = np.cross(normal, [0, 1.0, 0])
    a /= np.linalg.norm(a)
    b = np.cross(normal, a)
    D = points - m
    ang = np.arctan2(D @ b, D @ a)
    return points[np.argsort(ang)]
