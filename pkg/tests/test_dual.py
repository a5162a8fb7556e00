import numpy as np
import pytest

from chords.bodies import ball, cube
from chords.dual import dual_quermass, polygon_edges, polygon_vtilde
from chords.errors import DomainError
from chords.special import omega
from oracles import random_polygon


@pytest.mark.parametrize("n,q", [(2, 0.5), (2, 2.5), (3, 1.0), (3, 3.5)])
def test_unit_ball_at_centre(n, q):
    est = dual_quermass(ball(1.0, n), np.zeros(n), q)
    assert est.value == pytest.approx(omega(n), rel=1e-6)
    assert est.std_error == 0


def test_disk_from_boundary_point():
    # rho = 2 cos(phi) over a half circle, (1/2) * int 2 cos = 2
    est = dual_quermass(ball(1.0, 2), np.array([1.0, 0.0]), 1.0)
    assert est.value == pytest.approx(2.0, rel=1e-8)


def test_q_equal_n_gives_volume(rng):
    K = random_polygon(rng)
    z = K.vertices[:3].mean(0)
    from chords.polytope import volume
    assert dual_quermass(K, z, 2.0).value == pytest.approx(volume(K), rel=1e-12)
    assert dual_quermass(cube(3), np.array([0.2, -0.1, 0.3]), 3.0, resolution=96).value == \
        pytest.approx(8.0, rel=1e-3)


def test_exact_polygon_against_quadrature(rng):
    K = random_polygon(rng)
    z = K.vertices[2] * 0.3
    exact = dual_quermass(K, z, 1.7).value
    # brute angular quadrature
    t = 2 * np.pi * (np.arange(200_000) + 0.5) / 200_000
    from chords.bodies import radial_many
    r = radial_many(K, z, np.c_[np.cos(t), np.sin(t)])
    assert exact == pytest.approx(0.5 * (r ** 1.7).mean() * 2 * np.pi, rel=1e-6)


def test_vertex_point_skips_zero_sectors(rng):
    K = random_polygon(rng)
    edges = polygon_edges(K)
    v = polygon_vtilde(edges, K.vertices[:1], 2.0)
    from chords.polytope import volume
    assert v[0] == pytest.approx(volume(K), rel=1e-10)


def test_riesz_mc_agrees(rng):
    K = random_polygon(rng)
    z = np.array([0.1, -0.05])
    ref = dual_quermass(K, z, 1.5).value
    mc = dual_quermass(K, z, 1.5, method="riesz-mc", n_samples=400_000, seed=3)
    assert abs(mc.value - ref) < 4 * mc.std_error + 1e-3 * ref


def test_errors():
    with pytest.raises(DomainError):
        dual_quermass(ball(1.0, 2), np.zeros(2), 0.0)
    with pytest.raises(DomainError):
        dual_quermass(ball(1.0, 2), np.array([2.0, 0.0]), 1.0)
