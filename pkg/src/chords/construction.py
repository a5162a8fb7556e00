"""The shrinking family: h_eps from the classical problem, the anisotropic body K_{H_eps},
the density f_eps it solves for, and the decay sweep of its chord integral."""

from dataclasses import dataclass, field

import numpy as np

from .bodies import HPolytope, argmax_vertex, linear_image, support_many
from .classical import ClassicalProblem, discretize_density, section3_density, solve_classical_minkowski
from .dual import polygon_edges, polygon_vtilde, weighted_radial_integral_2d
from .errors import ChordsError, DomainError
from .estimates import DiscreteMeasure, Estimate
from .grids import pushforward, zonal_grid
from .integral import chord_integral_boundary, lp_chord_measure
from .params import EpsilonMaps, decay_bound, decay_exponent, height_exponent
from .rng import derive_seed
from .special import omega


def _is_even(body):
    if not hasattr(body, "vertices"):
        c = np.asarray(body.center, float)
        return np.abs(c).max() <= 1e-12 * max(1.0, float(np.max(body.semi_axes)))
    V = body.vertices
    U = V / np.linalg.norm(V, axis=1)[:, None]
    return np.abs(support_many(body, U) - support_many(body, -U)).max() <= 1e-9 * np.abs(V).max()


def build_H_epsilon(h_eps, params):
    """Body with support eps^k |M^{-1}x| h_eps(M^{-1}x / |M^{-1}x|), i.e. eps^k M^{-1} K_{h_eps}."""
    eps = params.epsilon
    if eps is None or not 0 < eps < 0.5:
        raise DomainError("epsilon must lie in (0, 1/2)")
    if not _is_even(h_eps):
        raise DomainError("h_eps must be origin-symmetric")
    maps = EpsilonMaps(eps, params.n)
    return linear_image(h_eps, eps ** height_exponent(params) * maps.Minv)


def constructed_support(h_eps, params, X):
    """The displayed formula for H_eps evaluated directly at directions X (for cross-checks)."""
    maps = EpsilonMaps(params.epsilon, params.n)
    Y = np.atleast_2d(X) @ maps.Minv.T
    r = np.linalg.norm(Y, axis=1)
    return params.epsilon ** height_exponent(params) * r * support_many(h_eps, Y / r[:, None])


# ---------------------------------------------------------------- the integral inside f_eps

def _pole_breaks(eps, bands=4):
    """Break angles at y = +-e_n and a refinement band of half-width 2 eps around each."""
    off = np.linspace(-2 * eps, 2 * eps, 2 * bands + 1)
    return np.r_[np.pi / 2 + off, 1.5 * np.pi + off]


def anisotropic_radial_integral(h_eps, z, eps, q, nodes=12):
    """(1/n) * integral of |N y|^{q-1-n} rho_{K,z}(y)^{q-1} over directions with rho > 0."""
    n = h_eps.dim
    if n == 2:
        def weight(Y):
            return np.sqrt(Y[:, 0] ** 2 + (eps * Y[:, 1]) ** 2) ** (q - 1 - n)
        val, _ = weighted_radial_integral_2d(h_eps, z, q - 1, weight, _pole_breaks(eps), nodes)
        return val
    if n == 3:
        from .bodies import radial_many
        c = np.cos(2 * eps)
        edges = [-1.0, -c, c, 1.0]
        x, w = np.polynomial.legendre.leggauss(nodes)
        T, WT = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            T.append(0.5 * (a + b) + 0.5 * (b - a) * x)
            WT.append(0.5 * (b - a) * w)
        t, wt = np.concatenate(T), np.concatenate(WT)
        n_phi = 4 * nodes
        phi = 2 * np.pi * (np.arange(n_phi) + 0.5) / n_phi
        TT, PP = np.meshgrid(t, phi, indexing="ij")
        s = np.sqrt(1 - TT ** 2)
        Y = np.c_[(s * np.cos(PP)).ravel(), (s * np.sin(PP)).ravel(), TT.ravel()]
        W = np.repeat(wt, n_phi) * (2 * np.pi / n_phi)
        r = radial_many(h_eps, z, Y)
        pos = r > 1e-12
        Ny = np.sqrt(Y[:, 0] ** 2 + Y[:, 1] ** 2 + (eps * Y[:, 2]) ** 2)
        return float((W[pos] * Ny[pos] ** (q - 1 - n) * r[pos] ** (q - 1)).sum()) / n
    raise DomainError("n must be 2 or 3")


def f_epsilon_eval(x, h_eps, params, resolution=12):
    """f_eps at unit directions x (rows), for the body K_{h_eps}."""
    X = np.atleast_2d(np.asarray(x, float))
    n, p, q = params.n, params.p, params.q
    eps = params.epsilon
    maps = EpsilonMaps(eps, n)
    Y = X @ maps.Minv.T
    Xe = Y / np.linalg.norm(Y, axis=1)[:, None]
    hx = support_many(h_eps, Xe)
    cache = {}
    J = np.empty(len(X))
    for i, u in enumerate(Xe):
        z = argmax_vertex(h_eps, u)
        key = tuple(np.round(z, 14))
        if key not in cache:
            cache[key] = anisotropic_radial_integral(h_eps, z, eps, q, resolution)
        J[i] = cache[key]
    xp = np.linalg.norm(X[:, :-1], axis=1)
    xn = np.abs(X[:, -1])
    Nx = np.linalg.norm(X @ maps.N.T, axis=1)
    a, b = params.alpha, params.beta
    pw = np.where(xp > 0, xp ** a, 1.0 if a == 0 else 0.0) * np.where(xn > 0, xn ** b, 1.0 if b == 0 else 0.0)
    out = hx ** (1 - p) * pw * Nx ** (-params.gamma - a - n - p) * J
    return out if np.ndim(x) > 1 else float(out[0])


def quermass_transform_check(h_eps, params, x, resolution=64, epsilon=None):
    """Dual quermassintegral of the transformed body at the transformed point, two ways."""
    eps = params.epsilon if epsilon is None else epsilon
    n, q = params.n, params.q
    maps = EpsilonMaps(eps, n)
    x = np.asarray(x, float)
    y = maps.Minv @ x
    xe = y / np.linalg.norm(y)
    z = argmax_vertex(h_eps, xe)
    Ku = linear_image(h_eps, maps.Minv)
    zu = maps.Minv @ z
    if n == 2:
        lhs = float(polygon_vtilde(polygon_edges(Ku), zu[None], q - 1)[0])
    else:
        from .dual import dual_quermass
        lhs = dual_quermass(Ku, zu, q - 1, resolution=resolution).value
    rhs = eps ** (2 - q) * anisotropic_radial_integral(h_eps, z, eps, q, resolution)
    return {"lhs": lhs, "rhs": rhs, "rel_err": abs(lhs - rhs) / abs(lhs)}


# ---------------------------------------------------------------- one member of the family

@dataclass
class Construction:
    params: object
    grid: object                 # target grid on which K_{H_eps} has its facet normals
    problem: ClassicalProblem    # discretized classical problem on the pulled-back directions
    solve: object                # SolveReport for h_eps
    body_h: HPolytope
    body_H: HPolytope


def construct(params, grid=None, rings=128, check=True):
    """Classical solve on the pullback of the target grid and the anisotropic image body."""
    if check:
        params.require("construction")
    grid = grid or zonal_grid(params.n, rings)
    maps = EpsilonMaps(params.epsilon, params.n)
    U, wu = pushforward(grid, maps.Minv)

    def density(X):
        return section3_density(X, params, check=False)

    problem = discretize_density(density, grid, directions=U, weights=wu)
    rep = solve_classical_minkowski(problem)
    body_H = build_H_epsilon(rep.body, params)
    # the image normals coincide with the target grid up to rounding; pin them exactly
    body_H = HPolytope(grid.directions, support_many(body_H, grid.directions))
    return Construction(params, grid, problem, rep, rep.body, body_H)


def f_epsilon_measure(con, resolution=12):
    """mu = f_eps(v_i) w_i on the target grid."""
    f = f_epsilon_eval(con.grid.directions, con.body_h, con.params, resolution)
    f = 0.5 * (f + f[con.grid.antipode])
    return DiscreteMeasure(con.grid.directions, f * con.grid.weights)


def measure_ratio(body, mu, params, resolution=None):
    """Per-facet F_{p,q}(K) / ((2q/omega_n) mu)."""
    F = lp_chord_measure(body, params.q, params.p, resolution).weights
    target = 2 * params.q / omega(params.n) * mu.weights
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(target > 0, F / target, np.inf)


# ---------------------------------------------------------------- sweep

@dataclass
class SweepRecord:
    epsilon: float
    Iq: Estimate = None
    paper_bound: float = float("nan")
    ratio: float = float("nan")
    solver_residual: float = float("nan")
    h_min: float = float("nan")
    h_max: float = float("nan")
    error: str = ""

    def to_dict(self):
        return {"epsilon": self.epsilon, "Iq": self.Iq.to_dict() if self.Iq else None,
                "paper_bound": self.paper_bound, "ratio": self.ratio,
                "solver_residual": self.solver_residual, "h_min": self.h_min,
                "h_max": self.h_max, "error": self.error}


@dataclass
class SweepResult:
    records: list
    slope: float
    predicted_exponent: float
    params: object = None
    extra: dict = field(default_factory=dict)


def loglog_slope(eps, vals):
    eps, vals = np.asarray(eps, float), np.asarray(vals, float)
    ok = np.isfinite(vals) & (vals > 0)
    if ok.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(eps[ok]), np.log(vals[ok]), 1)[0])


def epsilon_sweep(params, eps_list, rings=128, resolution=None, seed=0):
    """I_q of the constructed body along a descending list of epsilons."""
    eps_list = [float(e) for e in eps_list]
    if not eps_list or any(not 0 < e < 0.5 for e in eps_list):
        raise DomainError("eps_list must be a nonempty list inside (0, 1/2)")
    if any(a <= b for a, b in zip(eps_list, eps_list[1:])):
        raise DomainError("eps_list must be strictly descending")
    params.require("decay")
    grid = zonal_grid(params.n, rings)
    recs = []
    for eps in eps_list:
        P = params.with_epsilon(eps)
        rec = SweepRecord(eps)
        try:
            con = construct(P, grid, check=False)
            est = chord_integral_boundary(con.body_H, P.q, resolution)
            rec.Iq = Estimate(est.value, 0.0, est.n_samples, derive_seed(seed, eps), "boundary")
            rec.paper_bound = float(decay_bound(P, eps))
            rec.ratio = rec.Iq.value / rec.paper_bound
            rec.solver_residual = con.solve.residual
            rec.h_min = float(con.body_h.offsets.min())
            rec.h_max = float(con.body_h.offsets.max())
        except ChordsError as exc:     # recorded, the sweep continues
            rec.error = f"{type(exc).__name__}: {exc}"
        recs.append(rec)
    vals = [r.Iq.value if r.Iq else np.nan for r in recs]
    return SweepResult(recs, loglog_slope(eps_list, vals), decay_exponent(params), params)
