"""Invariant checks behind run_verification_suite; each returns (passed, detail)."""

import math

import numpy as np

from . import special
from .bodies import (HPolytope, VPolytope, ball, cube, linear_image, radial_many, support_many,
                     xray_many)
from .estimates import LineSamplerConfig


def random_polygon(rng, m=10, jitter=0.25, lo=0.8, hi=1.2):
    th = 2 * np.pi * np.arange(m) / m + rng.uniform(-jitter, jitter, m)
    U = np.c_[np.cos(th), np.sin(th)]
    return HPolytope(U, rng.uniform(lo, hi, m)).canonical()


def check_omega(seed):
    vals = [special.omega(2) - math.pi, special.omega(3) - 4 * math.pi / 3, special.omega(1) - 2]
    return max(abs(v) for v in vals) < 1e-12, {"errors": vals}


def check_ball_formula(seed):
    """Closed-form ball chord integral against hand-derived values and the special cases."""
    disk_I2 = special.ball_chord_integral(2, 2)
    v2, v3 = math.pi, 4 * math.pi / 3
    errs = {"disk_I2_vs_16/3": disk_I2 - 16 / 3,
            "I1_disk": special.ball_chord_integral(2, 1) - v2,
            "I1_ball3": special.ball_chord_integral(3, 1) - v3,
            "I3_disk": special.ball_chord_integral(2, 3) - 3 * v2 ** 2 / math.pi,
            "I4_ball3": special.ball_chord_integral(3, 4) - 4 * v3 ** 2 / v3}
    return max(abs(e) for e in errs.values()) < 1e-10, errs


def check_ball_mc(seed):
    from .integral import chord_integral_crofton
    est = chord_integral_crofton(ball(1, 2), 2.0, LineSamplerConfig(400_000, seed))
    z = (est.value - 16 / 3) / est.std_error
    return abs(z) < 5, {"estimate": est.value, "z": z}


def check_xray_decomposition(seed):
    rng = np.random.default_rng(seed)
    K = random_polygon(rng)
    V = K.vertices
    w = rng.dirichlet(np.ones(len(V)), 1000)
    Z = w @ V
    U = rng.normal(size=(1000, 2))
    U /= np.linalg.norm(U, axis=1)[:, None]
    X = xray_many(K, Z, U)
    r = np.array([radial_many(K, z, np.stack([u, -u])) for z, u in zip(Z, U)])
    err = np.abs(X - r.sum(1)).max()
    sym = np.abs(X - xray_many(K, Z, -U)).max()
    return err < 1e-10 and sym < 1e-12, {"max_err": err, "antipodal": sym}


def check_support_radial_polarity(seed):
    rng = np.random.default_rng(seed + 1)
    K = random_polygon(rng)
    U = rng.normal(size=(200, 2))
    U /= np.linalg.norm(U, axis=1)[:, None]
    rho = radial_many(K, np.zeros(2), U)
    val = rho * (U @ K.normals.T / K.offsets).max(axis=1)
    return np.abs(val - 1).max() < 1e-8, {"max_dev": float(np.abs(val - 1).max())}


def check_wulff_idempotence(seed):
    from .polytope import wulff_shape
    rng = np.random.default_rng(seed + 2)
    th = 2 * np.pi * (np.arange(24) + 0.5) / 24
    U = np.c_[np.cos(th), np.sin(th)]
    h = rng.uniform(0.7, 1.6, 24)
    W1 = wulff_shape(h, U)
    W2 = wulff_shape(W1.induced, U)
    A, B = W1.body.vertices, W2.body.vertices
    d = max(np.min(np.linalg.norm(A[:, None] - B[None], axis=2), axis=1).max(),
            np.min(np.linalg.norm(B[:, None] - A[None], axis=2), axis=1).max())
    ok = d < 1e-10 and np.all(W1.induced <= h + 1e-12)
    return ok, {"hausdorff": d}


def check_facet_area_gradient(seed):
    from .polytope import volume_and_facet_data
    rng = np.random.default_rng(seed + 3)
    K = random_polygon(rng)
    A = volume_and_facet_data(K)["facet_areas"]
    errs = []
    for i in range(len(K.offsets)):
        e = np.zeros(len(K.offsets))
        e[i] = 1e-5
        vp = volume_and_facet_data(HPolytope(K.normals, K.offsets + e))["volume"]
        vm = volume_and_facet_data(HPolytope(K.normals, K.offsets - e))["volume"]
        errs.append(abs((vp - vm) / 2e-5 - A[i]) / A[i])
    return max(errs) < 1e-5, {"max_rel": max(errs)}


def check_linear_image_composition(seed):
    rng = np.random.default_rng(seed + 4)
    K = random_polygon(rng)
    A = rng.normal(size=(2, 2)) + 2 * np.eye(2)
    B = rng.normal(size=(2, 2)) + 2 * np.eye(2)
    U = rng.normal(size=(100, 2))
    U /= np.linalg.norm(U, axis=1)[:, None]
    s1 = support_many(linear_image(linear_image(K, A), B), U)
    s2 = support_many(linear_image(K, B @ A), U)
    s3 = support_many(K, U @ (B @ A))     # h_{MK}(u) = h_K(M^T u)
    err = max(np.abs(s1 - s2).max(), np.abs(s1 - s3).max())
    return err < 1e-10, {"max_err": err}


def check_homogeneity(seed):
    from .bodies import circumradius
    from .integral import chord_integral_crofton
    K = random_polygon(np.random.default_rng(seed + 5))
    R = circumradius(K)
    a = chord_integral_crofton(K, 2.5, LineSamplerConfig(200_000, seed, R))
    b = chord_integral_crofton(linear_image(K, 2 * np.eye(2)), 2.5, LineSamplerConfig(200_000, seed, 2 * R))
    rel = abs(b.value / a.value / 2 ** 3.5 - 1)
    return rel < 1e-10, {"rel_err": rel}


def check_measure_integral(seed):
    from .integral import chord_integral_boundary, chord_integral_crofton, chord_measure_polytope
    K = random_polygon(np.random.default_rng(seed + 6))
    b = chord_integral_boundary(K, 2.5)
    mc = chord_integral_crofton(K, 2.5, LineSamplerConfig(400_000, seed))
    F1 = chord_measure_polytope(K, 1.0).weights
    from .polytope import volume_and_facet_data
    A = volume_and_facet_data(K)["facet_areas"]
    z = (b.value - mc.value) / mc.std_error
    ok = abs(z) < 5 and np.abs(F1 - A).max() < 1e-12
    return ok, {"boundary": b.value, "crofton": mc.value, "z": z}


def check_first_variation(seed):
    from .checks import first_variation_check
    rng = np.random.default_rng(seed + 7)
    th = 2 * np.pi * np.arange(10) / 10 + 0.1
    U = np.c_[np.cos(th), np.sin(th)]
    h = rng.uniform(0.9, 1.1, 10)
    g = 1 + 0.5 * np.cos(th)
    r = first_variation_check(h, g, 2.5, 1e-4, method="boundary", directions=U)
    return r["rel_err"] < 1e-4, r


def check_classical(seed):
    from .classical import discretize_density, solve_classical_minkowski
    from .grids import circle_grid
    g = circle_grid(64)
    pr = discretize_density(lambda X: 1 + 0.5 * X[:, 1] ** 2, g)
    rep = solve_classical_minkowski(pr)
    h = rep.body.offsets
    even = np.abs(h - h[g.antipode]).max()
    from .estimates import DiscreteMeasure
    from .classical import ClassicalProblem
    rep2 = solve_classical_minkowski(ClassicalProblem(DiscreteMeasure(g.directions, 2 * pr.measure.weights)))
    scale = np.abs(rep2.body.offsets - 2 * h).max()
    ok = rep.residual < 1e-6 and even < 1e-10 and scale < 1e-10
    return ok, {"residual": rep.residual, "evenness": even, "scaling": scale}


def check_epsilon_maps(seed):
    from .params import EpsilonMaps
    m = EpsilonMaps(0.1, 3)
    ok = np.allclose(m.N, 0.1 * m.Minv, atol=0, rtol=0) and abs(np.linalg.det(m.M) - 0.01) < 1e-15
    return bool(ok), {}


def check_construction(seed):
    from .construction import build_H_epsilon, quermass_transform_check
    from .params import ProblemParams, height_exponent
    from .polytope import volume
    P = ProblemParams(2, -1.0, 2.5, 0.5, 0.5, -0.8, 0.1)
    K = random_polygon(np.random.default_rng(seed + 8))
    K = HPolytope(np.vstack([K.normals, -K.normals]), np.r_[K.offsets, K.offsets]).canonical()
    H = build_H_epsilon(K, P)
    k = height_exponent(P)
    vol_err = abs(volume(H) / volume(K) / 0.1 ** (2 * k - 1) - 1)
    rng = np.random.default_rng(seed + 9)
    errs = []
    for _ in range(3):
        t = rng.uniform(0, 2 * np.pi)
        errs.append(quermass_transform_check(K, P, [np.cos(t), np.sin(t)], 24)["rel_err"])
    return vol_err < 1e-8 and max(errs) < 1e-2, {"volume_law": vol_err, "quermass": errs}


def check_variational_ball(seed):
    from .estimates import DiscreteMeasure
    from .grids import circle_grid
    from .params import ProblemParams
    from .variational import VariationalOptions, maximize
    g = circle_grid(32)
    P = ProblemParams(2, -1.0, 2.5, 0.5, 0.5)
    f = DiscreteMeasure(g.directions, g.weights)
    th = np.arctan2(g.directions[:, 1], g.directions[:, 0])
    st = maximize(f, P, VariationalOptions(start=1 + 0.2 * np.cos(2 * th)))
    flat = np.ptp(st.h) / st.h.mean()
    return flat < 1e-2 and abs(st.chord.value - 1) < 1e-6, {"flatness": flat}


def check_json_roundtrip(seed):
    from .bodies import dumps, loads
    K = random_polygon(np.random.default_rng(seed + 10))
    s = dumps(K)
    return dumps(loads(s)) == s, {}


def check_ellipsoid_bound(seed):
    from .bodies import Ellipsoid
    from .checks import ellipsoid_chord_bound
    from .integral import chord_integral_crofton
    rng = np.random.default_rng(seed + 11)
    bad = 0
    for i in range(10):
        n = 2 + i % 2
        a = np.sort(rng.uniform(0.05, 1, n))
        E = Ellipsoid(a)
        est = chord_integral_crofton(E, 2.5, LineSamplerConfig(100_000, seed + i))
        bad += est.value - 3 * est.std_error > ellipsoid_chord_bound(E, 2.5)
    return bad == 0, {"violations": int(bad)}


def check_interpolation(seed):
    from .checks import interpolation_bound_check
    rng = np.random.default_rng(seed + 12)
    bad = 0
    for i in range(10):
        K = random_polygon(rng, m=int(rng.integers(5, 12)))
        bad += not interpolation_bound_check(K, 2, 3, LineSamplerConfig(100_000, seed + i))["holds"]
    return bad == 0, {"violations": int(bad)}


def check_constructed_measure(seed):
    from .construction import construct, f_epsilon_measure, measure_ratio
    from .params import ProblemParams
    P = ProblemParams(2, -1.0, 2.5, 0.5, 0.5, -0.8, 0.2)
    con = construct(P, rings=64)
    r = measure_ratio(con.body_H, f_epsilon_measure(con), P)
    dev = float(np.abs(r - 1).max())
    return dev < 0.05, {"max_rel_dev": dev}


FAST = [
    ("omega", check_omega),
    ("ball_formula", check_ball_formula),
    ("ball_crofton", check_ball_mc),
    ("xray_decomposition", check_xray_decomposition),
    ("support_radial_polarity", check_support_radial_polarity),
    ("wulff_idempotence", check_wulff_idempotence),
    ("facet_area_gradient", check_facet_area_gradient),
    ("linear_image_composition", check_linear_image_composition),
    ("homogeneity", check_homogeneity),
    ("measure_integral_consistency", check_measure_integral),
    ("first_variation", check_first_variation),
    ("classical_solver", check_classical),
    ("epsilon_maps", check_epsilon_maps),
    ("construction_identities", check_construction),
    ("variational_ball", check_variational_ball),
    ("json_roundtrip", check_json_roundtrip),
]

FULL = [
    ("ellipsoid_bound", check_ellipsoid_bound),
    ("interpolation_inequality", check_interpolation),
    ("constructed_measure_identity", check_constructed_measure),
]
