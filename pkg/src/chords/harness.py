"""End-to-end experiments: the two-solution reproduction, the verification suite, exports."""

import csv
import io
import math
import time
import traceback
from dataclasses import dataclass, field

import numpy as np

from . import jsonio
from .bodies import HPolytope, from_dict, support_many
from .construction import (SweepRecord, build_H_epsilon, construct, f_epsilon_measure)
from .errors import ChordsError
from .estimates import DiscreteMeasure, Estimate
from .grids import zonal_grid
from .integral import chord_integral_boundary
from .variational import (VariationalOptions, euler_lagrange_rescale, maximize,
                          stationarity_residual)

RATIO_THRESHOLD = 4.0
GAP_THRESHOLD = 0.25
STAGES = ("validate", "classical", "density", "variational", "report")


@dataclass
class NonuniquenessReport:
    body_constructed: object = None
    body_variational: object = None
    Iq_constructed: Estimate = None
    Iq_variational: Estimate = None
    residual_constructed: float = float("nan")
    residual_variational: float = float("nan")
    support_gap: float = float("nan")
    distinct: bool = False
    Iq_ratio: float = float("nan")
    thresholds: dict = field(default_factory=lambda: {"Iq_ratio": RATIO_THRESHOLD,
                                                      "support_gap": GAP_THRESHOLD})
    params: dict = None
    C: float = float("nan")
    rescale_factor: float = float("nan")
    stationarity: float = float("nan")
    iterations: int = 0
    stage: str = "complete"
    error: str = ""

    def to_dict(self):
        def b(x):
            return x.to_dict() if x is not None else None
        return {"body_constructed": b(self.body_constructed),
                "body_variational": b(self.body_variational),
                "Iq_constructed": b(self.Iq_constructed), "Iq_variational": b(self.Iq_variational),
                "residual_constructed": self.residual_constructed,
                "residual_variational": self.residual_variational,
                "support_gap": self.support_gap, "distinct": self.distinct,
                "Iq_ratio": self.Iq_ratio, "thresholds": self.thresholds, "params": self.params,
                "C": self.C, "rescale_factor": self.rescale_factor,
                "stationarity": self.stationarity, "iterations": self.iterations,
                "stage": self.stage, "error": self.error}

    def dumps(self):
        return jsonio.dumps(self.to_dict())


def support_gap(h0, H):
    """max over directions of |h0 - H| / max(h0, H)."""
    return float(np.max(np.abs(h0 - H) / np.maximum(h0, H)))


def run_nonuniqueness(config, resume=None, artifacts=None):
    """Constructed and variational solutions of one equation, compared.

    `resume` may hold stage artifacts from an earlier run ("body_h", "mu", "body_variational"
    as dicts); `artifacts`, if a dict, receives the artifacts of this run.
    """
    resume = resume or {}
    rep = NonuniquenessReport()
    stage = "validate"
    try:
        P = config.problem_params()
        rep.params = P.to_dict()
        if not (2 < P.q < P.n + 1):
            raise ChordsError("two distinct solutions need 2 < q < n+1")
        P.require("construction")
        P.require("variational")
        grid = zonal_grid(P.n, config.grid.rings)

        stage = "classical"
        if "body_h" in resume:
            body_h = from_dict(resume["body_h"])
        else:
            body_h = construct(P, grid).body_h
        body_H = build_H_epsilon(body_h, P)
        body_H = HPolytope(grid.directions, support_many(body_H, grid.directions))
        rep.body_constructed = body_H

        stage = "density"
        if "mu" in resume:
            mu = DiscreteMeasure.from_dict(resume["mu"])
        else:
            from .construction import Construction
            con = Construction(P, grid, None, None, body_h, body_H)
            mu = f_epsilon_measure(con, config.grid.f_nodes)

        stage = "variational"
        opts = VariationalOptions(tol=config.variational.tol, max_iter=config.variational.max_iter,
                                  resolution=config.grid.nodes)
        if "body_variational" in resume:
            body_0 = from_dict(resume["body_variational"])
            sol = None
        else:
            state = maximize(mu, P, opts)
            rep.stationarity, rep.iterations = state.stationarity, state.iteration
            sol = euler_lagrange_rescale(state, mu, P, config.grid.nodes)
            body_0 = sol.body
            rep.C, rep.rescale_factor = sol.C, sol.rescale_factor
        rep.body_variational = body_0
        if isinstance(artifacts, dict):
            artifacts.update({"body_h": body_h.to_dict(), "mu": mu.to_dict(),
                              "body_variational": body_0.to_dict()})

        stage = "report"
        rep.Iq_constructed = chord_integral_boundary(body_H, P.q, config.grid.nodes)
        rep.Iq_variational = chord_integral_boundary(body_0, P.q, config.grid.nodes)
        rep.residual_constructed = stationarity_residual(body_H, mu, P, config.grid.nodes)
        rep.residual_variational = stationarity_residual(body_0, mu, P, config.grid.nodes)
        rep.Iq_ratio = rep.Iq_variational.value / rep.Iq_constructed.value
        rep.support_gap = support_gap(support_many(body_0, grid.directions),
                                      support_many(body_H, grid.directions))
        rep.distinct = bool(rep.Iq_ratio >= RATIO_THRESHOLD and rep.support_gap >= GAP_THRESHOLD)
    except Exception as exc:      # partial report naming the failing stage
        rep.stage = stage
        rep.error = f"{type(exc).__name__}: {exc}"
    return rep


# ---------------------------------------------------------------- export

ESTIMATE_HEADER = ["body_id", "q", "p", "method", "value", "std_error", "n_samples", "seed"]
SWEEP_HEADER = ["epsilon", "Iq", "Iq_stderr", "paper_bound", "ratio", "solver_residual"]


@dataclass
class EstimateRecord:
    body_id: str
    q: float
    p: float
    estimate: Estimate

    def to_dict(self):
        return {"record_type": "estimate", "body_id": self.body_id, "q": self.q, "p": self.p,
                **self.estimate.to_dict()}

    def row(self):
        e = self.estimate
        return [self.body_id, self.q, self.p, e.method, e.value, e.std_error, e.n_samples, e.seed]


def _sweep_dict(r):
    return {"record_type": "sweep", "epsilon": r.epsilon,
            "Iq": r.Iq.value if r.Iq else float("nan"),
            "Iq_stderr": r.Iq.std_error if r.Iq else float("nan"),
            "paper_bound": r.paper_bound, "ratio": r.ratio, "solver_residual": r.solver_residual}


def _record_dict(r):
    if isinstance(r, SweepRecord):
        return _sweep_dict(r)
    if isinstance(r, dict):
        return r
    return r.to_dict()


def _cell(x):
    if isinstance(x, (float, np.floating)):
        return jsonio.fmt(x)
    return str(x)


def export_results(records, format="csv", path=None, kind=None):
    """Write records as CSV (fixed header per record type) or JSON; returns the text."""
    dicts = [_record_dict(r) for r in records]
    if format == "json":
        text = jsonio.dumps(dicts) + "\n"
    elif format == "csv":
        kind = kind or (dicts[0].get("record_type") if dicts else "estimate")
        header = SWEEP_HEADER if kind == "sweep" else ESTIMATE_HEADER
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for d in dicts:
            w.writerow([_cell(d[k] if k in d else d.get("value")) for k in header])
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def import_results(path):
    with open(path, encoding="utf-8") as fh:
        return jsonio.loads(fh.read())


def read_sweep_csv(path):
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return {k: np.array([float(r[k]) for r in rows]) for k in SWEEP_HEADER}


# ---------------------------------------------------------------- verification suite

def run_verification_suite(level="fast", seed=0):
    """Run the invariant checks; returns {"passed": bool, "checks": [...]}."""
    from . import verification
    checks = verification.FAST + (verification.FULL if level == "full" else [])
    out = []
    t_all = time.perf_counter()
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn(seed)
        except Exception as exc:
            ok, detail = False, {"exception": f"{type(exc).__name__}: {exc}",
                                 "trace": traceback.format_exc(limit=3)}
        out.append({"name": name, "passed": bool(ok), "seconds": round(time.perf_counter() - t0, 3),
                    "detail": detail})
    return {"level": level, "seed": seed, "passed": all(c["passed"] for c in out),
            "seconds": round(time.perf_counter() - t_all, 3), "checks": out}
