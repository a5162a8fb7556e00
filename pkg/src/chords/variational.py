"""Maximization of Phi_p(h) = sum f_i h_i^p under I_q([h]) = 1 and the rescaling that turns the
maximizer into a solution of F_{p,q}(K, .) = (2q/omega_n) f."""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bodies import HPolytope, support_many
from .constants import SOLVER_BOX
from .errors import DegeneracyError, DomainError, SolverBoxError
from .estimates import Estimate
from .integral import DEFAULT_NODES, _polygon_chord_measure, chord_measure_polytope
from .special import omega


def _values(h):
    return np.asarray(getattr(h, "values", h), float)


def phi_p(h, f, p):
    """sum_i f_i h_i^p (the weights of f already carry the quadrature weights)."""
    h = _values(h)
    w = np.asarray(getattr(f, "weights", f), float)
    if np.any(h <= 0):
        raise DomainError("support values must be positive")
    if not p < 0:
        raise DomainError("p must be negative")
    return float(w @ h ** p)


def orbit_labels(U, tol=1e-9):
    """Directions sharing |u_n| form one orbit of the even, rotationally symmetric action."""
    t = np.round(np.abs(U[:, -1]) / tol) * tol
    _, lab = np.unique(t, return_inverse=True)
    return lab


class ChordModel:
    """I_q and F_q of Wulff shapes over a fixed direction set."""

    def __init__(self, directions, q, resolution=None, orbits=None):
        self.U = np.asarray(directions, float)
        self.n = self.U.shape[1]
        self.q = q
        self.resolution = resolution
        self.orbits = orbits
        if orbits is not None:
            # one representative facet per orbit
            _, self.reps = np.unique(orbits, return_index=True)

    def evaluate(self, h):
        """(I_q, F_q over all directions, active mask) for the Wulff shape of h."""
        body = HPolytope(self.U, h)
        act = body.active
        if self.n == 2 and self.orbits is not None:
            F = _polygon_chord_measure(body, self.q, self.resolution or DEFAULT_NODES,
                                       facets=self.reps[act[self.reps]])
            rep_val = np.zeros(self.orbits.max() + 1)
            rep_val[self.orbits[self.reps]] = F[self.reps]
            F = np.where(act, rep_val[self.orbits], 0.0)
        else:
            F = chord_measure_polytope(body, self.q, self.resolution).weights
        Iq = float(h[act] @ F[act]) / (self.n + self.q - 1)
        if not Iq > 0:
            raise DegeneracyError("chord integral vanished")
        return Iq, F, act, body


def normalize_unit_chord(h, q, resolution=None, directions=None):
    """lambda h with lambda = I_q([h])^{-1/(n+q-1)}."""
    from .grids import SupportVector
    U = h.grid.directions if directions is None else np.asarray(directions, float)
    vals = _values(h)
    Iq, _, _, _ = ChordModel(U, q, resolution).evaluate(vals)
    lam = Iq ** (-1.0 / (U.shape[1] + q - 1))
    if isinstance(h, SupportVector):
        return h.scaled(lam)
    return lam * vals


@dataclass
class VariationalOptions:
    tol: float = 1e-3
    max_iter: int = 2000
    resolution: int = None
    start: np.ndarray = None        # initial support values (default: constant)
    symmetric: bool = True
    box: tuple = SOLVER_BOX


@dataclass
class VariationalState:
    directions: np.ndarray
    h: np.ndarray
    objective: float
    chord: Estimate
    iteration: int
    stationarity: float
    trace: list = field(default_factory=list)
    converged: bool = False
    message: str = ""

    def to_dict(self):
        return {"directions": self.directions, "h": self.h, "objective": self.objective,
                "chord": self.chord.to_dict(), "iteration": self.iteration,
                "stationarity": self.stationarity, "trace": list(self.trace),
                "converged": self.converged, "message": self.message}


def euler_lagrange_parallelism(h, F, w, p, act):
    """max |r_i / median(r) - 1| with r_i = p f_i h_i^{p-1} / F_q,i over active facets."""
    m = act & (F > 0)
    r = w[m] * h[m] ** (p - 1) / F[m]
    med = np.median(r)
    return float(np.abs(r / med - 1).max())


def maximize(f, params, opts=None):
    """Maximizer of Phi_p over Wulff shapes with unit chord integral."""
    opts = opts or VariationalOptions()
    params.require("variational")
    if not 1 <= params.q < params.n + 1:
        raise DomainError("the maximization problem needs 1 <= q < n+1")
    U = f.directions
    w = f.weights
    if not w.sum() > 0:
        raise DomainError("f must have positive mass")
    n, p, q = params.n, params.p, params.q
    d = n + q - 1
    if opts.symmetric:
        orb = orbit_labels(U)
        spread = np.array([np.ptp(w[orb == k]) for k in range(orb.max() + 1)])
        if spread.max() > 1e-8 * w.max():
            raise DomainError("f is not even and rotationally symmetric on the grid")
    else:
        orb = np.arange(len(w))
    n_orb = orb.max() + 1
    model = ChordModel(U, q, opts.resolution, orb if opts.symmetric else None)
    h0 = np.ones(len(w)) if opts.start is None else np.asarray(opts.start, float)
    x0 = np.array([np.log(h0[orb == k]).mean() for k in range(n_orb)])
    x0 -= x0.mean()
    trace = []

    def neg_j(x):
        h = np.exp(x[orb])
        Iq, F, act, _ = model.evaluate(h)
        phi = float(w @ h ** p)
        val = np.log(phi) - p / d * np.log(Iq)
        g = (p * w * h ** p / phi - p / d * F * h / Iq)
        return -val, -np.bincount(orb, g, n_orb)

    def record(x):
        trace.append(float(np.exp(-neg_j(x)[0])))

    record(x0)
    res = minimize(neg_j, x0, jac=True, method="L-BFGS-B", callback=record,
                   bounds=[(-12.0, 12.0)] * n_orb,
                   options={"maxiter": opts.max_iter, "maxfun": 4 * opts.max_iter,
                            "gtol": 1e-12, "ftol": 1e-15, "maxcor": 30})
    h = np.exp(res.x[orb])
    # Wulff re-extraction, then the exact scale projection onto I_q = 1
    body = HPolytope(U, h)
    h = support_many(body, U)
    h = np.where(body.active, body.offsets, h)
    Iq, _, _, _ = model.evaluate(h)
    h = h * Iq ** (-1.0 / d)
    Iq, F, act, _ = model.evaluate(h)
    state = VariationalState(U, h, float(w @ h ** p), Estimate(Iq, 0.0, len(h), 0, "boundary"),
                             int(res.nit), euler_lagrange_parallelism(h, F, w, p, act), trace,
                             message=str(res.message))
    state.converged = state.stationarity <= opts.tol
    lo, hi = opts.box
    if h.min() <= lo or h.max() >= hi:
        raise SolverBoxError(f"iterate left the box [{lo}, {hi}]", state)
    return state


@dataclass
class RescaledSolution:
    body: HPolytope
    C: float
    rescale_factor: float
    Iq: Estimate
    Iq_predicted: float

    def to_dict(self):
        return {"body": self.body.to_dict(), "C": self.C, "rescale_factor": self.rescale_factor,
                "Iq": self.Iq.to_dict(), "Iq_predicted": self.Iq_predicted}


def euler_lagrange_rescale(state, f, params, resolution=None):
    """Scale the maximizer by C^{1/(n+q-p-1)}, C = 2q/((n+q-1) omega_n) Phi_p(h)."""
    n, p, q = params.n, params.p, params.q
    C = 2 * q / ((n + q - 1) * omega(n)) * phi_p(state.h, f, p)
    if not C > 0:
        raise DomainError("C must be positive")
    t = C ** (1.0 / (n + q - p - 1))
    body = HPolytope(state.directions, t * state.h)
    Iq, _, _, _ = ChordModel(state.directions, q, resolution).evaluate(body.offsets)
    return RescaledSolution(body, C, t, Estimate(Iq, 0.0, len(state.h), 0, "boundary"),
                            C ** ((n + q - 1) / (n + q - p - 1)))


def stationarity_residual(body, f, params, resolution=None):
    """max |r_i - median r| / median r, r_i = F_{p,q}(K)_i / f_i over active facets."""
    U = body.normals
    fw = np.asarray(f.weights, float)
    if len(fw) != len(U) or np.abs(f.directions - U).max() > 1e-9:
        # match measure directions to facet normals
        j = np.argmax(f.directions @ U.T, axis=0)
        if np.abs(f.directions[j] - U).max() > 1e-9:
            raise DomainError("measure directions do not match the body's facet normals")
        fw = fw[j]
    act = body.active
    h = body.offsets
    if np.any(h[act] <= 0):
        raise DomainError("origin must be interior")
    F = chord_measure_polytope(body, params.q, resolution).weights
    Fpq = np.where(act, np.abs(h) ** (1 - params.p) * F, 0.0)
    m = act
    if np.any(m & (fw == 0) & (Fpq > 0)):
        return float("inf")
    r = Fpq[m] / fw[m]
    med = np.median(r)
    return float(np.abs(r - med).max() / med)
