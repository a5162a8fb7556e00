import numpy as np
import pytest

from chords.bodies import HPolytope, cube
from chords.errors import DomainError
from chords.estimates import DiscreteMeasure
from chords.grids import circle_grid
from chords.integral import chord_integral_boundary, lp_chord_measure
from chords.params import ProblemParams
from chords.special import omega
from chords.variational import (ChordModel, VariationalOptions, euler_lagrange_rescale, maximize,
                                normalize_unit_chord, phi_p, stationarity_residual)
from oracles import random_polygon

P0 = ProblemParams(2, -1.0, 2.5, 0.0, 0.0)
P1 = ProblemParams(2, -1.0, 2.5, 0.5, 0.5)


def test_phi_p_examples():
    U = np.array([[1, 0], [-1, 0.0]])
    assert phi_p(np.array([2.0, 2.0]), DiscreteMeasure(U, np.ones(2)), -1) == pytest.approx(1.0)
    f = DiscreteMeasure(circle_grid(8).directions, np.arange(1, 9.0))
    assert phi_p(np.ones(8), f, -2) == pytest.approx(36.0)
    assert phi_p(np.full(8, 3.0), f, -2) == pytest.approx(36.0 / 9)
    with pytest.raises(DomainError):
        phi_p(np.r_[np.ones(7), 0.0], f, -1)


def test_normalize_square_and_idempotence():
    U = cube(2).normals
    h = normalize_unit_chord(np.ones(4), 2.5, directions=U)
    lam = chord_integral_boundary(cube(2), 2.5).value ** (-1 / 3.5)
    assert np.allclose(h, lam)
    assert chord_integral_boundary(HPolytope(U, h), 2.5).value == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(normalize_unit_chord(h, 2.5, directions=U), h, rtol=1e-10)


def _uniform(N=64):
    g = circle_grid(N)
    return DiscreteMeasure(g.directions, g.weights)


def test_uniform_measure_gives_regular_polygon():
    f = _uniform()
    rng = np.random.default_rng(1)
    start = np.exp(0.1 * rng.normal(size=len(f)))
    start = 0.5 * (start + start[circle_grid(64).antipode])
    st = maximize(f, P0, VariationalOptions(start=start, symmetric=False))
    assert np.ptp(st.h) / st.h.mean() < 0.01
    Iq, _, _, _ = ChordModel(f.directions, 2.5).evaluate(st.h)
    assert Iq == pytest.approx(1.0, abs=1e-9)
    assert st.stationarity < 1e-3
    assert all(b >= a - 1e-6 * abs(a) for a, b in zip(st.trace, st.trace[1:]))


def test_rescaled_solution_identity():
    g = circle_grid(64)
    X = g.directions
    f = DiscreteMeasure(X, np.abs(X[:, 0]) ** 0.5 * np.abs(X[:, 1]) ** 0.5
                        * (2 + np.cos(4 * np.arctan2(X[:, 1], X[:, 0]))) * g.weights)
    st = maximize(f, P1)
    assert st.converged
    sol = euler_lagrange_rescale(st, f, P1)
    assert sol.Iq.value == pytest.approx(sol.Iq_predicted, rel=0.02)
    F = lp_chord_measure(sol.body, 2.5, -1.0).weights
    target = 2 * 2.5 / omega(2) * f.weights
    act = sol.body.active
    assert np.allclose(F[act], target[act], rtol=0.02)
    assert stationarity_residual(sol.body, f, P1) < 0.01


def test_asymmetric_measure_rejected():
    g = circle_grid(16)
    w = g.weights * (1 + 0.3 * g.directions[:, 0] ** 2 * (g.directions[:, 1] > 0))
    with pytest.raises(DomainError):
        maximize(DiscreteMeasure(g.directions, w), P0)


def test_stationarity_exact_solution_and_scaling(rng):
    K = random_polygon(rng, m=12)
    F = lp_chord_measure(K, 2.5, -1.0).weights
    f = DiscreteMeasure(K.normals, F * (1 + 1e-5 * rng.uniform(size=len(F))))
    r = stationarity_residual(K, f, P1)
    assert r < 1e-3
    t = 1.7
    tK = HPolytope(K.normals, t * K.offsets)
    r2 = stationarity_residual(tK, f.scaled(t ** 4.5), P1)
    assert r2 == pytest.approx(r, abs=1e-10)


def test_stationarity_negative_control(rng):
    K = random_polygon(rng, m=12)
    f = DiscreteMeasure(K.normals, rng.uniform(0.1, 1.0, len(K.offsets)))
    assert stationarity_residual(K, f, P1) > 0.3
    w = np.array(lp_chord_measure(K, 2.5, -1.0).weights)
    w[0] = 0.0
    assert stationarity_residual(K, DiscreteMeasure(K.normals, w), P1) == float("inf")
