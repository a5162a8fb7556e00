import json
import subprocess
import sys

import numpy as np
import pytest

from chords import bodies, jsonio
from chords.cli import main


@pytest.fixture
def square(tmp_path):
    p = tmp_path / "square.json"
    p.write_text(bodies.dumps(bodies.cube(2)))
    return p


def test_compute_boundary(square, tmp_path, capsys):
    out = tmp_path / "o.json"
    assert main(["compute", "--body", str(square), "--q", "1", "--method", "boundary",
                 "--out", str(out)]) == 0
    assert jsonio.loads(out.read_text())["value"] == pytest.approx(4.0)


def test_global_flags_before_and_after_verb(square, capsys):
    args = ["--q", "2.5", "--samples", "20000", "--body", str(square)]
    assert main(["--seed", "5", "--threads", "2", "compute"] + args) == 0
    a = capsys.readouterr().out
    assert main(["compute"] + args + ["--seed", "5"]) == 0
    b = capsys.readouterr().out
    assert a == b
    assert json.loads(a)["seed"] == 5


def test_compute_measures(square, capsys):
    assert main(["compute", "--body", str(square), "--quantity", "Fq", "--q", "1"]) == 0
    assert np.allclose(json.loads(capsys.readouterr().out)["weights"], 2.0)
    assert main(["compute", "--body", str(square), "--quantity", "Fpq", "--q", "1",
                 "--p", "0"]) == 0
    assert np.allclose(json.loads(capsys.readouterr().out)["weights"], 2.0)
    assert main(["compute", "--body", str(square), "--quantity", "Vq", "--q", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(4.0)


def test_classical_solve(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text('{"gamma": -0.7, "epsilon": 0.2, "rings": 16}')
    assert main(["classical-solve", "--config", str(c)]) == 0
    assert json.loads(capsys.readouterr().out)["residual"] < 1e-6


def test_sweep_and_export(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"params": {"p": -1, "q": 2.5, "alpha": 0.5, "beta": 0.5,
                                        "gamma": -0.7}, "eps_list": [0.4, 0.2],
                             "grid": {"rings": 16}}))
    out = tmp_path / "s.csv"
    assert main(["sweep", "--config", str(c), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("epsilon,Iq") and len(lines) == 3
    rec = tmp_path / "r.json"
    rec.write_text(json.dumps([{"record_type": "estimate", "body_id": "sq", "q": 1, "p": 1,
                                "value": 4.0, "std_error": 0, "n_samples": 1, "seed": 0,
                                "method": "boundary"}]))
    assert main(["export", "--in", str(rec)]) == 0
    assert capsys.readouterr().out.splitlines()[1].startswith("sq,1,1,boundary,4")


def test_variational_solve(tmp_path, capsys):
    from chords.estimates import DiscreteMeasure
    from chords.grids import circle_grid
    g = circle_grid(32)
    f = tmp_path / "f.json"
    f.write_text(jsonio.dumps(DiscreteMeasure(g.directions, g.weights).to_dict()))
    c = tmp_path / "c.json"
    c.write_text('{"params": {"p": -1, "q": 2.5}}')
    assert main(["variational-solve", "--config", str(c), "--f", str(f)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["residual"] < 1e-3
    assert out["Iq"]["value"] == pytest.approx(out["Iq_predicted"], rel=0.02)


def test_nonuniq_small(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"params": {"p": -1, "q": 2.5, "alpha": 0.5, "beta": 0.5,
                                        "gamma": -0.8, "epsilon": 0.2}, "grid": {"rings": 16}}))
    assert main(["nonuniq", "--config", str(c)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["stage"] == "complete" and rep["thresholds"]["Iq_ratio"] == 4


def test_errors_exit_2(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text('{"params": {"p": -1, "q": 2.5}, "typo": 1}')
    assert main(["sweep", "--config", str(c)]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["compute", "--body", str(tmp_path / "missing.json"), "--q", "1"]) == 2


def test_console_script_verify(tmp_path):
    r = subprocess.run([sys.executable, "-m", "chords", "verify", "--out",
                        str(tmp_path / "v.json")], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert json.loads((tmp_path / "v.json").read_text())["passed"]
