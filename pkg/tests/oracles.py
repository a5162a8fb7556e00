"""Independent reference computations used by the tests."""

import numpy as np

from chords.bodies import xray_many


def polygon_chord_integral(K, q, nodes=20):
    """I_q of a convex polygon by integrating over lines directly.

    For a fixed direction the chord length is piecewise linear in the offset, with kinks at the
    vertex projections, so the offset integral is exact.  The direction integral is split at the
    angles where two vertices project to the same offset.
    """
    V = K.vertices
    D = V[:, None, :] - V[None, :, :]
    iu = np.triu_indices(len(V), 1)
    br = np.mod(np.arctan2(D[..., 1], D[..., 0])[iu], np.pi)
    br = np.unique(np.r_[0.0, br, np.pi])
    x, w = np.polynomial.legendre.leggauss(nodes)
    total = 0.0
    for a, b in zip(br[:-1], br[1:]):
        if b - a < 1e-14:
            continue
        for th, wt in zip(0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * w):
            u = np.array([np.cos(th), np.sin(th)])
            perp = np.array([-u[1], u[0]])
            t = np.sort(V @ perp)
            X = xray_many(K, t[:, None] * perp, np.broadcast_to(u, (len(t), 2)))
            dt = np.diff(t)
            xa, xb = X[:-1], X[1:]
            with np.errstate(divide="ignore", invalid="ignore"):
                seg = np.where(np.abs(xa - xb) > 1e-13 * max(1.0, X.max()),
                               dt * (xa ** (q + 1) - xb ** (q + 1)) / ((q + 1) * (xa - xb)),
                               dt * xa ** q)
            total += wt * seg.sum()
    return total / np.pi


def random_polygon(rng, m=10, jitter=0.25, lo=0.8, hi=1.2):
    from chords.verification import random_polygon as rp
    return rp(rng, m, jitter, lo, hi)


def random_symmetric_polygon(rng, m=6, lo=0.7, hi=1.3):
    from chords.bodies import HPolytope
    th = np.pi * np.arange(m) / m + rng.uniform(-0.2, 0.2, m)
    U = np.c_[np.cos(th), np.sin(th)]
    h = rng.uniform(lo, hi, m)
    return HPolytope(np.vstack([U, -U]), np.r_[h, h]).canonical()


def random_polytope3(rng, m=12):
    from chords.bodies import HPolytope
    U = rng.normal(size=(m, 3))
    U /= np.linalg.norm(U, axis=1)[:, None]
    U = np.vstack([U, np.eye(3), -np.eye(3)])
    return HPolytope(U, rng.uniform(0.8, 1.2, len(U))).canonical()
