import numpy as np
import pytest

from chords.bodies import HPolytope, support_many
from chords.classical import (ClassicalProblem, discretize_density, facet_area_residual,
                              section3_density, solve_classical_minkowski)
from chords.errors import ClosureError, DomainError
from chords.estimates import DiscreteMeasure
from chords.grids import SphericalGrid, circle_grid, zonal_grid
from chords.params import ProblemParams
from chords.polytope import volume_and_facet_data

AXES = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], float)


def _params(**kw):
    base = dict(n=2, p=-1.0, q=2.5, alpha=0.5, beta=0.5, gamma=-0.8, epsilon=0.25)
    base.update(kw)
    return ProblemParams(**base)


def test_density_values():
    P = _params(alpha=0.0, beta=0.0, gamma=-0.7, epsilon=0.45)
    x = np.array([[1, 1]]) / np.sqrt(2)
    got = section3_density(x, P, check=False)[0]
    assert got == pytest.approx((0.45 ** 2 * 0.5 + 0.5) ** -0.35, rel=1e-14)
    P = _params()
    assert section3_density(np.array([[0.0, 1.0], [1.0, 0.0]]), P).tolist() == [0.0, 0.0]


def test_density_rejects_window():
    with pytest.raises(DomainError):
        section3_density(np.array([[0.6, 0.8]]), _params(gamma=-0.7))


def test_discretize_uniform():
    g = SphericalGrid(AXES, np.full(4, np.pi / 2))
    prob = discretize_density(lambda X: np.ones(len(X)), g)
    assert np.allclose(prob.measure.weights, np.pi / 2)


def test_closure_enforced():
    with pytest.raises(ClosureError):
        ClassicalProblem(DiscreteMeasure(AXES, np.array([1, 1, 2, 1.0])))


def test_square_solution():
    prob = ClassicalProblem(DiscreteMeasure(AXES, np.full(4, 3.0)))
    rep = solve_classical_minkowski(prob)
    assert np.allclose(volume_and_facet_data(rep.body)["facet_areas"], 3.0)
    assert np.allclose(rep.body.offsets, 1.5)
    assert rep.residual < 1e-12


def test_regular_polygon_solution():
    g = circle_grid(32)
    rep = solve_classical_minkowski(discretize_density(lambda X: np.ones(len(X)), g))
    assert np.ptp(rep.body.offsets) < 1e-10
    assert rep.residual < 1e-10


def test_section3_density_solution_is_symmetric():
    g = zonal_grid(2, 64)
    P = _params(epsilon=0.1)
    rep = solve_classical_minkowski(discretize_density(lambda X: section3_density(X, P), g))
    assert rep.residual < 1e-6
    h = rep.body.offsets
    anti = g.antipode
    assert np.abs(h - h[anti]).max() < 1e-9
    assert np.linalg.norm(volume_and_facet_data(rep.body)["centroid"]) < 1e-9


def test_3d_solution_matches_cube():
    U = np.vstack([np.eye(3), -np.eye(3)])
    rep = solve_classical_minkowski(ClassicalProblem(DiscreteMeasure(U, np.full(6, 4.0))))
    assert rep.residual < 1e-6
    assert np.allclose(rep.body.offsets, 1.0, rtol=1e-4)
