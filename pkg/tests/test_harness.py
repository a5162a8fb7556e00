import json

import numpy as np
import pytest

from chords import jsonio, special
from chords.config import ClassicalConfig, ExperimentConfig, load_config
from chords.construction import epsilon_sweep
from chords.errors import ConfigError
from chords.estimates import Estimate
from chords.harness import (ESTIMATE_HEADER, SWEEP_HEADER, EstimateRecord, export_results,
                            import_results, read_sweep_csv, run_nonuniqueness,
                            run_verification_suite, support_gap)
from chords.params import ProblemParams

SMALL = {"params": {"n": 2, "p": -1, "q": 2.5, "alpha": 0.5, "beta": 0.5, "gamma": -0.8,
                    "epsilon": 0.2},
         "grid": {"rings": 24}}


def _cfg(**over):
    d = json.loads(json.dumps(SMALL))
    for k, v in over.items():
        d[k] = v
    return load_config(json.dumps(d))


# ------------------------------------------------------------------ config

def test_config_defaults():
    c = _cfg()
    assert c.eps_list == [0.4, 0.2, 0.1, 0.05]
    assert c.grid.nodes == 8 and c.seed == 0
    assert c.problem_params().gamma == -0.8


@pytest.mark.parametrize("bad", [
    '{"params": {"p": -1, "q": 2.5}, "unknown": 1}',
    '{"params": {"p": -1, "q": 2.5, "gama": -0.8}}',
    '{"params": {"p": 1, "q": 2.5}}',
    '{"params": {"p": -1, "q": 2.5}, "eps_list": [0.1, 0.2]}',
    '{"params": {"p": -1, "q": 2.5}, "eps_list": [0.6]}',
    '{"params": {"p": -1, "q": 2.5}, "grid": {"rings": 0}}',
    '{"params": {"p": -1, "q": 2.5}, "seed": -3}',
    'not json',
])
def test_config_rejections(bad):
    with pytest.raises(ConfigError):
        load_config(bad)


def test_classical_config():
    c = load_config('{"gamma": -0.7, "epsilon": 0.1}', ClassicalConfig)
    assert c.rings == 64
    with pytest.raises(ConfigError):
        load_config('{"gamma": -0.7, "epsilon": 0.7}', ClassicalConfig)


# ------------------------------------------------------------------ nonuniqueness harness

@pytest.fixture(scope="module")
def small_run():
    art = {}
    rep = run_nonuniqueness(_cfg(), artifacts=art)
    return rep, art


def test_report_complete(small_run):
    rep, _ = small_run
    assert rep.stage == "complete", rep.error
    assert rep.residual_constructed <= 0.05
    assert rep.residual_variational <= 0.05
    assert rep.thresholds == {"Iq_ratio": 4.0, "support_gap": 0.25}
    assert rep.distinct == (rep.Iq_ratio >= 4 and rep.support_gap >= 0.25)
    assert rep.Iq_ratio == pytest.approx(rep.Iq_variational.value / rep.Iq_constructed.value)


def test_report_is_deterministic(small_run):
    rep, _ = small_run
    assert run_nonuniqueness(_cfg()).dumps() == rep.dumps()


def test_resume_from_artifacts(small_run):
    rep, art = small_run
    again = run_nonuniqueness(_cfg(), resume=art)
    assert again.stage == "complete"
    assert again.Iq_variational.value == rep.Iq_variational.value
    assert again.support_gap == rep.support_gap


def test_stage_failure_is_isolated(small_run):
    _, art = small_run
    broken = dict(art)
    broken["mu"] = {"directions": art["mu"]["directions"], "weights": [-1.0] * len(art["mu"]["weights"])}
    rep = run_nonuniqueness(_cfg(), resume=broken)
    assert rep.stage == "density"
    assert "DomainError" in rep.error
    assert rep.body_constructed is not None and rep.body_variational is None


def test_validation_failure_names_stage():
    rep = run_nonuniqueness(_cfg(params={**SMALL["params"], "gamma": -0.5}))
    assert rep.stage == "validate" and rep.error


def test_support_gap():
    assert support_gap(np.array([1.0, 2.0]), np.array([1.0, 1.0])) == pytest.approx(0.5)


# ------------------------------------------------------------------ export

def test_header_only_csv(tmp_path):
    p = tmp_path / "e.csv"
    text = export_results([], "csv", p)
    assert text == ",".join(ESTIMATE_HEADER) + "\n"
    assert p.read_text() == text
    assert export_results([], "csv", kind="sweep") == ",".join(SWEEP_HEADER) + "\n"


def test_json_round_trip_is_byte_identical(tmp_path):
    recs = [EstimateRecord("square", 2.5, 1.0, Estimate(0.1 + 0.2, 1e-3, 10, 3, "crofton-mc")),
            EstimateRecord("disk", 1.0, -1.0, Estimate(np.pi, 0.0, 1, 0, "closed-form"))]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    export_results(recs, "json", a)
    export_results(import_results(a), "json", b)
    assert a.read_bytes() == b.read_bytes()


def test_unwritable_path():
    with pytest.raises(OSError):
        export_results([], "csv", "/nonexistent-dir/x.csv")


def test_sweep_csv_slope(tmp_path):
    P = ProblemParams(2, -1.0, 2.5, 0.5, 0.5, -0.7)
    res = epsilon_sweep(P, [0.4, 0.2, 0.1], rings=16)
    path = tmp_path / "s.csv"
    export_results(res.records, "csv", path, kind="sweep")
    cols = read_sweep_csv(path)
    slope = np.polyfit(np.log(cols["epsilon"]), np.log(cols["Iq"]), 1)[0]
    assert slope == pytest.approx(res.slope, abs=1e-12)
    assert np.allclose(cols["ratio"], cols["Iq"] / cols["paper_bound"], rtol=1e-14)


# ------------------------------------------------------------------ verification suite

def test_verification_fast_passes_for_two_seeds():
    a = run_verification_suite("fast", 0)
    b = run_verification_suite("fast", 7)
    assert a["passed"], [c for c in a["checks"] if not c["passed"]]
    assert [c["passed"] for c in a["checks"]] == [c["passed"] for c in b["checks"]]


def test_corrupted_omega_is_caught(monkeypatch):
    real = special.omega
    monkeypatch.setattr(special, "omega", lambda s: real(s) * (1.01 if s > 2 else 1.0))
    rep = run_verification_suite("fast", 0)
    bad = {c["name"] for c in rep["checks"] if not c["passed"]}
    assert "ball_formula" in bad
    assert not rep["passed"]
