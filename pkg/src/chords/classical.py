"""Classical (surface area measure) Minkowski problem for discrete even measures."""

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bodies import HPolytope
from .constants import CLOSURE_RTOL
from .errors import ClosureError, DomainError, RepresentationError
from .estimates import DiscreteMeasure
from .grids import _antipode_index
from .polytope import volume_and_facet_data


def section3_density(x, params, check=True):
    """|x'|^a |x_n|^b (eps^2 |x'|^2 + x_n^2)^{(g-b)/2}; zero where a factor with positive power vanishes."""
    if check:
        params.require("construction")
    if params.alpha < 0 or params.beta < 0:
        raise DomainError("density exponents alpha, beta must be nonnegative")
    if params.epsilon is None:
        raise DomainError("epsilon is not set")
    x = np.atleast_2d(np.asarray(x, float))
    xp = np.linalg.norm(x[:, :-1], axis=1)
    xn = np.abs(x[:, -1])
    eps = params.epsilon
    a, b, g = params.alpha, params.beta, params.gamma
    with np.errstate(divide="ignore", invalid="ignore"):
        base = (eps * eps * xp * xp + xn * xn) ** (0.5 * (g - b))
        val = np.where(xp > 0, xp ** a, 1.0 if a == 0 else 0.0) \
            * np.where(xn > 0, xn ** b * base, 0.0 if b > 0 else base)
    return val


@dataclass(frozen=True, eq=False)
class ClassicalProblem:
    measure: DiscreteMeasure
    even: bool = True
    rotationally_symmetric: bool = True

    def __post_init__(self):
        U, f = self.measure.directions, self.measure.weights
        if np.linalg.norm(f @ U) > CLOSURE_RTOL * max(f.sum(), 1e-300):
            raise ClosureError("sum of f_i u_i is not zero")
        from ._hull import check_bounded
        check_bounded(U[f > 0])


def discretize_density(density, grid, directions=None, weights=None):
    """f_i = density(u_i) w_i, averaged over antipodal pairs so that closure holds exactly."""
    U = grid.directions if directions is None else np.asarray(directions, float)
    w = grid.weights if weights is None else np.asarray(weights, float)
    vals = np.asarray(density(U), float)
    if not np.all(np.isfinite(vals)):
        raise DomainError("density is not finite at a node")
    f = vals * w
    anti = grid.antipode if directions is None else _antipode_index(U)
    f = 0.5 * (f + f[anti])
    return ClassicalProblem(DiscreteMeasure(U, f))


@dataclass
class SolveReport:
    body: HPolytope
    iterations: int
    residual: float
    objective_trace: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self):
        return {"body": self.body.to_dict(), "iterations": self.iterations,
                "residual": self.residual, "objective_trace": list(self.objective_trace),
                "wall_time": self.wall_time}


def facet_area_residual(body, f, tol=1e-14):
    areas = volume_and_facet_data(body)["facet_areas"]
    big = f > tol * f.max()
    res = np.abs(areas[big] - f[big]) / f[big]
    return float(res.max())


def _solve_2d(U, f, start=0):
    ang = np.mod(np.arctan2(U[:, 1], U[:, 0]), 2 * np.pi)
    order = np.argsort(ang, kind="stable")
    order = np.roll(order, -int(start))
    T = np.c_[-U[order, 1], U[order, 0]]
    P = np.cumsum(f[order, None] * T, axis=0)    # P[k]: end point of edge k
    from ._hull import polygon_area_centroid
    _, c = polygon_area_centroid(P)
    P = P - c
    h = np.empty(len(f))
    h[order] = np.einsum("ij,ij->i", U[order], P)
    return h


def _solve_3d(U, f, max_iter=10_000, tol=1e-6):
    trace = []

    def obj(x):
        h = np.exp(x)
        d = volume_and_facet_data(HPolytope(U, h))
        V, A = d["volume"], d["facet_areas"]
        s = f @ h
        val = s / V ** (1 / 3)
        g = (f * h) / V ** (1 / 3) - s / (3 * V ** (4 / 3)) * A * h
        trace.append(val)
        return np.log(val), g / val

    x0 = np.zeros(len(f))
    res = minimize(obj, x0, jac=True, method="L-BFGS-B",
                   options={"maxiter": max_iter, "gtol": 1e-13, "ftol": 1e-16})
    h = np.exp(res.x)
    A = volume_and_facet_data(HPolytope(U, h))["facet_areas"]
    # f = lambda * area at the optimum; areas scale quadratically
    lam = (f @ h) / (A @ h)
    return h * np.sqrt(lam), res.nit, trace


def solve_classical_minkowski(problem, start=0):
    """Polytope whose facet areas equal the measure weights (n = 2 exact, n = 3 variational)."""
    t0 = time.perf_counter()
    U = problem.measure.directions
    f = problem.measure.weights
    n = U.shape[1]
    if n == 2:
        h = _solve_2d(U, f, start)
        it, trace = 0, []
    elif n == 3:
        h, it, trace = _solve_3d(U, f)
    else:
        raise DomainError("classical solver supports n = 2, 3")
    if np.any(h <= 0):
        raise RepresentationError("solution does not contain the origin in its interior")
    body = HPolytope(U, h)
    res = facet_area_residual(body, f)
    return SolveReport(body, it, res, [float(v) for v in trace], time.perf_counter() - t0)
