"""Command line interface: chords <verb> [options]."""

import argparse
import json
import sys
from types import SimpleNamespace

import numpy as np

from . import jsonio
from .bodies import from_dict
from .errors import ChordsError


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_compute(a):
    from .dual import dual_quermass
    from .estimates import LineSamplerConfig
    from .integral import (chord_integral_boundary, chord_integral_closed_form,
                           chord_integral_crofton, chord_measure_polytope, lp_chord_measure)
    body = from_dict(jsonio.loads(_read(a.body)))
    if a.quantity == "Iq":
        method = a.method or "crofton-mc"
        if method == "crofton-mc":
            res = chord_integral_crofton(body, a.q, LineSamplerConfig(a.samples, a.seed), a.threads)
        elif method == "boundary":
            res = chord_integral_boundary(body, a.q, a.resolution)
        elif method == "closed-form":
            res = chord_integral_closed_form(body, a.q)
        else:
            raise ChordsError(f"method {method} does not compute I_q")
        out = res.to_dict()
    elif a.quantity == "Vq":
        z = np.zeros(body.dim) if a.z is None else np.array(a.z, float)
        out = dual_quermass(body, z, a.q, a.method or "radial-quadrature", a.resolution, a.seed,
                            a.samples).to_dict()
    elif a.quantity == "Fq":
        out = chord_measure_polytope(body, a.q, a.resolution).to_dict()
    else:
        out = lp_chord_measure(body, a.q, a.p, a.resolution).to_dict()
    _write(jsonio.dumps(out) + "\n", a.out)


def cmd_classical(a):
    from .classical import discretize_density, section3_density, solve_classical_minkowski
    from .config import ClassicalConfig, load_config
    from .grids import zonal_grid
    c = load_config(_read(a.config), ClassicalConfig)
    dp = SimpleNamespace(alpha=c.alpha, beta=c.beta, gamma=c.gamma, epsilon=c.epsilon)
    pr = discretize_density(lambda X: section3_density(X, dp, check=False), zonal_grid(c.n, c.rings))
    rep = solve_classical_minkowski(pr)
    d = rep.to_dict()
    d.pop("wall_time")
    _write(jsonio.dumps(d) + "\n", a.out)
    print(f"residual {rep.residual:.3e}", file=sys.stderr)


def cmd_sweep(a):
    from .config import load_config
    from .construction import epsilon_sweep
    from .harness import export_results
    c = load_config(_read(a.config))
    res = epsilon_sweep(c.problem_params(), c.eps_list, c.grid.rings, c.grid.nodes, a.seed)
    _write(export_results(res.records, "csv", kind="sweep"), a.out)
    print(f"fitted slope {res.slope:.6f}  predicted exponent {res.predicted_exponent:.6f}",
          file=sys.stderr)


def cmd_variational(a):
    from .config import load_config
    from .estimates import DiscreteMeasure
    from .variational import (VariationalOptions, euler_lagrange_rescale, maximize,
                              stationarity_residual)
    c = load_config(_read(a.config))
    P = c.problem_params()
    f = DiscreteMeasure.from_dict(jsonio.loads(_read(a.f)))
    st = maximize(f, P, VariationalOptions(c.variational.tol, c.variational.max_iter, c.grid.nodes))
    sol = euler_lagrange_rescale(st, f, P, c.grid.nodes)
    out = sol.to_dict()
    out["residual"] = stationarity_residual(sol.body, f, P, c.grid.nodes)
    out["trace"] = st.trace
    out["stationarity"] = st.stationarity
    _write(jsonio.dumps(out) + "\n", a.out)


def cmd_nonuniq(a):
    from .config import load_config
    from .harness import run_nonuniqueness
    c = load_config(_read(a.config))
    rep = run_nonuniqueness(c)
    _write(rep.dumps() + "\n", a.out)
    print(f"stage {rep.stage}  distinct {rep.distinct}  Iq ratio {rep.Iq_ratio:.4g}  "
          f"support gap {rep.support_gap:.4g}", file=sys.stderr)
    return 0 if rep.stage == "complete" else 1


def cmd_verify(a):
    from .harness import run_verification_suite
    rep = run_verification_suite(a.level, a.seed)
    _write(jsonio.dumps(rep) + "\n", a.out)
    for c in rep["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}", file=sys.stderr)
    return 0 if rep["passed"] else 1


def cmd_export(a):
    from .harness import export_results
    recs = json.loads(_read(a.input))
    kind = recs[0].get("record_type") if recs else None
    _write(export_results(recs, a.format, kind=kind), a.out)


def build_parser():
    ap = argparse.ArgumentParser(prog="chords", description=__doc__)
    ap.add_argument("--seed", type=int, default=0, help="base RNG seed")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for Monte Carlo")
    ap.add_argument("--out", default=None, help="output file (default stdout)")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("compute", help="one-off I_q, dual quermassintegral, F_q or F_pq")
    p.add_argument("--body", required=True)
    p.add_argument("--quantity", choices=["Iq", "Vq", "Fq", "Fpq"], default="Iq")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--method", default=None)
    p.add_argument("--z", type=float, nargs="+", default=None)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--resolution", type=int, default=None)
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("classical-solve", help="solve the classical problem for the shrinking-family density")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_classical)

    p = sub.add_parser("sweep", help="chord integral of the constructed body along eps_list (CSV)")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("variational-solve", help="maximize Phi_p under I_q = 1 and rescale")
    p.add_argument("--config", required=True)
    p.add_argument("--f", required=True, help="DiscreteMeasure JSON")
    p.set_defaults(fn=cmd_variational)

    p = sub.add_parser("nonuniq", help="constructed vs variational solution of one equation")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_nonuniq)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export", help="convert JSON records to CSV or JSON")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(fn=cmd_export)
    return ap


def main(argv=None):
    ap = build_parser()
    # global flags are accepted before or after the verb
    argv = list(sys.argv[1:] if argv is None else argv)
    a = ap.parse_args(_hoist_globals(argv))
    try:
        rc = a.fn(a)
    except (ChordsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return rc or 0


def _hoist_globals(argv):
    front, rest = [], []
    i = 0
    while i < len(argv):
        tok = argv[i]
        name = tok.split("=", 1)[0]
        if name in ("--seed", "--threads", "--out"):
            if "=" in tok:
                front.append(tok)
            else:
                front += argv[i:i + 2]
                i += 1
        else:
            rest.append(tok)
        i += 1
    return front + rest


if __name__ == "__main__":
    sys.exit(main())
