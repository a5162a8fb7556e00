"""Wulff shapes and exact volume / facet data."""

from dataclasses import dataclass

import numpy as np

from . import _hull
from .bodies import Ball, Ellipsoid, HPolytope, VPolytope, support_many
from .constants import DEGENERACY_TOL
from .errors import DegeneracyError, DomainError
from .special import omega


@dataclass(frozen=True, eq=False)
class WulffResult:
    body: HPolytope          # canonical: active facets only
    active: np.ndarray       # mask over the input directions
    induced: np.ndarray      # support of the body at every input direction (<= h)


def wulff_shape(h, directions=None):
    """Intersection of the halfspaces x.u_i <= h_i; h is a SupportVector or an array with directions."""
    if directions is None:
        directions, values = h.grid.directions, h.values
    else:
        values = np.asarray(h, float)
    if np.any(values <= 0):
        raise DomainError("support numbers must be positive")
    full = HPolytope(directions, values)
    act = full.active
    body = HPolytope(full.normals[act], full.offsets[act])
    induced = support_many(body, full.normals)
    induced[act] = full.offsets[act]
    if volume_and_facet_data(body)["volume"] < DEGENERACY_TOL:
        raise DegeneracyError("Wulff shape has vanishing volume")
    return WulffResult(body, act, induced)


def _polygon_data(body):
    order = body.polygon_order
    V = body.vertices
    P0 = np.roll(V, 1, axis=0)
    lengths = np.linalg.norm(V - P0, axis=1)
    area, cen = _hull.polygon_area_centroid(V)
    areas = np.zeros(len(body.offsets))
    areas[order] = lengths
    return area, areas, cen


def _polytope3_data(body):
    V = body.vertices
    N, h = body.normals, body.offsets
    areas = np.zeros(len(h))
    vol = 0.0
    mom = np.zeros(3)
    scale = max(1.0, np.abs(V).max())
    for i in np.flatnonzero(body.active):
        on = np.abs(V @ N[i] - h[i]) <= 1e-9 * scale
        if on.sum() < 3:
            continue
        P = _hull.order_facet(V[on], N[i])
        c0 = P.mean(axis=0)
        tri_a = 0.5 * np.linalg.norm(np.cross(P - c0, np.roll(P, -1, axis=0) - c0), axis=1)
        tri_c = (P + np.roll(P, -1, axis=0) + c0) / 3
        a = tri_a.sum()
        areas[i] = a
        # cones from the origin; signed heights handle an origin outside the body
        fc = (tri_a[:, None] * tri_c).sum(0) / a
        cone = h[i] * a / 3
        vol += cone
        mom += cone * 0.75 * fc
    return vol, areas, mom / vol


def volume_and_facet_data(body):
    """Volume, per-facet (n-1)-areas (zero for inactive facets), facet normals and centroid."""
    if isinstance(body, VPolytope):
        body = body.hrep
    if isinstance(body, HPolytope):
        if body.dim == 2:
            vol, areas, cen = _polygon_data(body)
        elif body.dim == 3:
            vol, areas, cen = _polytope3_data(body)
        else:
            raise DomainError("exact polytope data is implemented for n = 2, 3")
        if not vol > DEGENERACY_TOL:
            raise DegeneracyError("polytope has vanishing volume")
        return {"volume": float(vol), "facet_areas": areas, "facet_normals": body.normals,
                "centroid": cen}
    if isinstance(body, (Ball, Ellipsoid)):
        n = body.dim
        vol = omega(n) * float(np.prod(body.semi_axes))
        return {"volume": vol, "facet_areas": np.zeros(0), "facet_normals": np.zeros((0, n)),
                "centroid": np.array(body.center)}
    raise DomainError(f"unsupported body {type(body).__name__}")


def volume(body):
    return volume_and_facet_data(body)["volume"]
