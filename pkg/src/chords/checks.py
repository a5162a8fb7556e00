"""Numerical checks of the chord-integral inequalities and of the first-variation formula."""

import math

import numpy as np

from .bodies import Ellipsoid
from .errors import DomainError, PreconditionError
from .estimates import LineSamplerConfig
from .integral import chord_integral_boundary, chord_integral_crofton, chord_measure_polytope
from .polytope import volume, wulff_shape
from .special import omega


def ellipsoid_bound_constant(n, q):
    m = math.floor(q)
    if m == n:
        return (2 ** (q - n + 2) * q * (q - 1) * omega(n - 1) ** 2
                / ((q - n) * (q - n + 1) * n * omega(n)))
    return (2 ** (n - m + 3) * q * (q - 1) * (n - m) * omega(m - 1) ** 2 * omega(n - m) ** 2
            / ((m + 1 - q) * (q - m) * (q - m + 1) * n * omega(n)))


def ellipsoid_chord_bound(E, q):
    """Upper bound on I_q(E) for a centred ellipsoid with semi-axes a_1 <= ... <= a_n <= 1."""
    a = np.sort(np.asarray(E.semi_axes if hasattr(E, "semi_axes") else E, float))
    n = a.size
    if float(q).is_integer():
        raise DomainError("integer q: use interpolation_bound_check (or q + 1/2)")
    if not 1 < q < n + 1:
        raise DomainError("q must lie in (1, n+1)")
    if a[-1] > 1 + 1e-12 or a[0] <= 0:
        raise PreconditionError("semi-axes must lie in (0, 1]")
    m = math.floor(q)
    return float(ellipsoid_bound_constant(n, q) * np.prod(a[:m]) ** 2 * a[m - 1] ** (q - m - 1)
                 * np.prod(a[m:]))


def ellipsoid_chord_bound_integer(E, q):
    """Integer q is handled through the bound at q' = q + 1/2."""
    return ellipsoid_chord_bound(E, q + 0.5)


def interpolation_constant(s, r):
    return r * s ** (-(r - 1) / (s - 1))


def interpolation_bound_check(body, r, s, cfg=None, threads=1):
    """I_r <= c(s,r) V^{1-(r-1)/(s-1)} I_s^{(r-1)/(s-1)}, judged with a 3 standard error margin."""
    if not (1 <= r < s):
        raise DomainError("need 1 <= r < s")
    cfg = cfg or LineSamplerConfig()
    Ir = chord_integral_crofton(body, r, cfg, threads)
    Is = chord_integral_crofton(body, s, cfg, threads)
    V = volume(body)
    th = (r - 1) / (s - 1)
    rhs = interpolation_constant(s, r) * V ** (1 - th) * Is.value ** th
    rhs_se = rhs * th * Is.std_error / Is.value
    margin = 3 * math.hypot(Ir.std_error, rhs_se)
    return {"lhs": Ir.value, "lhs_stderr": Ir.std_error, "rhs": rhs, "rhs_stderr": rhs_se,
            "holds": bool(Ir.value - margin <= rhs)}


def first_variation_check(h, g, q, step, cfg=None, method="crofton-mc", threads=1,
                          directions=None, resolution=None):
    """Central difference of I_q along h + t g against the pairing sum_i g_i F_q,i."""
    if directions is None:
        directions, h = h.grid.directions, h.values
    h = np.asarray(h, float)
    g = np.asarray(g, float)
    if np.any(h - step * np.abs(g) <= 0):
        raise PreconditionError("h + t g must stay positive for |t| <= step")
    cfg = cfg or LineSamplerConfig(n_samples=2_000_000)
    W0 = wulff_shape(h, directions)
    Wp = wulff_shape(h + step * g, directions)
    Wm = wulff_shape(h - step * g, directions)
    changed = bool(np.any(Wp.active != W0.active) or np.any(Wm.active != W0.active))
    if method == "crofton-mc":
        # common random numbers: same seed, same bounding radius for both bodies
        from .bodies import circumradius
        R = max(circumradius(Wp.body), circumradius(Wm.body))
        c = LineSamplerConfig(cfg.n_samples, cfg.seed, R)
        Ip = chord_integral_crofton(Wp.body, q, c, threads)
        Im = chord_integral_crofton(Wm.body, q, c, threads)
        # the difference has far smaller error than either term; bound it crudely by the paired
        # standard error of the per-line differences
        fd_se = _paired_stderr(Wp.body, Wm.body, q, c, threads) / (2 * step)
    else:
        Ip = chord_integral_boundary(Wp.body, q, resolution)
        Im = chord_integral_boundary(Wm.body, q, resolution)
        fd_se = 0.0
    fd = (Ip.value - Im.value) / (2 * step)
    F = np.zeros(len(h))
    F[W0.active] = chord_measure_polytope(W0.body, q, resolution).weights
    pairing = float(g @ F)
    rel = abs(fd - pairing) / max(abs(pairing), 1e-300)
    return {"fd": fd, "fd_stderr": fd_se, "measure_pairing": pairing, "rel_err": rel,
            "facet_set_changed": changed}


def _paired_stderr(A, B, q, cfg, threads):
    from .bodies import xray_many
    from .integral import _line_sample
    from .rng import map_chunks
    n = A.dim

    def chunk(rng, size):
        X, U = _line_sample(rng, size, n, cfg.bounding_radius)
        d = xray_many(A, X, U) ** q - xray_many(B, X, U) ** q
        return d.sum(), (d * d).sum(), size

    parts = map_chunks(chunk, cfg.n_samples, cfg.seed, threads)
    s = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    m = sum(p[2] for p in parts)
    var = max(s2 / m - (s / m) ** 2, 0.0)
    return omega(n - 1) * cfg.bounding_radius ** (n - 1) * math.sqrt(var / m)
