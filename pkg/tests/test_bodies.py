import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chords import bodies
from chords.bodies import (Ball, Ellipsoid, HPolytope, VPolytope, argmax_vertex, ball, contains,
                           cube, linear_image, radial_eval, radial_many, regular_polygon,
                           support_eval, support_many, xray, xray_many)
from chords.errors import DomainError, RepresentationError
from oracles import random_polygon


def test_ellipsoid_support():
    E = Ellipsoid((2.0, 1.0))
    assert support_eval(E, np.array([0.6, 0.8])) == pytest.approx(np.sqrt(4 * 0.36 + 0.64))


def test_square_support_and_vertex():
    K = cube(2)
    assert support_eval(K, np.array([1, 1]) / np.sqrt(2)) == pytest.approx(np.sqrt(2))
    v = argmax_vertex(K, np.array([1.0, 0.0]))
    assert v[0] == pytest.approx(1.0)


def test_ball_xray_and_radial():
    B = ball(1.0, 2)
    assert xray(B, np.zeros(2), np.array([1.0, 0.0])) == pytest.approx(2.0)
    assert xray(B, np.array([0.0, 0.5]), np.array([1.0, 0.0])) == pytest.approx(np.sqrt(3))
    assert radial_eval(B, np.array([0.5, 0.0]), np.array([1.0, 0.0])) == pytest.approx(0.5)
    assert radial_eval(B, np.array([0.5, 0.0]), np.array([-1.0, 0.0])) == pytest.approx(1.5)


def test_line_missing_body_has_zero_chord():
    assert xray(cube(2), np.array([0.0, 3.0]), np.array([1.0, 0.0])) == 0.0


def test_radial_outside_raises():
    with pytest.raises(DomainError):
        radial_eval(cube(2), np.array([2.0, 0.0]), np.array([1.0, 0.0]))


def test_contains():
    K = cube(3)
    got = contains(K, np.array([[0.5, 0.5, 0.5], [1.5, 0.0, 0.0], [1.0, 1.0, 1.0]]))
    assert got.tolist() == [True, False, True]
    assert contains(ball(1.0, 2), np.array([[0.6, 0.8], [0.6, 0.81]])).tolist() == [True, False]


def test_vpolytope_hrep_matches():
    V = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], float)
    P = VPolytope(V)
    U = np.array([[1, 1], [1, -2], [0, 1]], float)
    U /= np.linalg.norm(U, axis=1)[:, None]
    assert np.allclose(support_many(P, U), (U @ V.T).max(1))
    assert np.allclose(support_many(P.hrep, U), (U @ V.T).max(1))


def test_regular_polygon_inradius():
    K = regular_polygon(8, inradius=1.0)
    assert np.allclose(K.offsets, 1.0)
    assert len(K.vertices) == 8


def test_unbounded_rejected():
    with pytest.raises(Exception):
        HPolytope(np.array([[1.0, 0.0], [0.0, 1.0]]), np.ones(2)).vertices


def test_ellipsoid_rejects_bad_axes():
    with pytest.raises((DomainError, RepresentationError)):
        Ellipsoid((1.0, -1.0))


def test_serialization_round_trip(rng):
    for K in (random_polygon(rng), ball(2.0, 3), Ellipsoid((1.0, 2.0, 3.0))):
        K2 = bodies.loads(bodies.dumps(K))
        U = rng.normal(size=(20, K.dim))
        U /= np.linalg.norm(U, axis=1)[:, None]
        assert np.array_equal(support_many(K, U), support_many(K2, U))
        assert bodies.dumps(K2) == bodies.dumps(K)


def test_linear_image_of_ball_is_ellipsoid():
    E = linear_image(ball(1.0, 2), np.diag([2.0, 0.5]))
    assert isinstance(E, Ellipsoid)
    assert np.allclose(sorted(E.semi_axes), [0.5, 2.0])


def test_linear_image_orthogonal_ball_stays_ball():
    c, s = np.cos(0.3), np.sin(0.3)
    B = linear_image(ball(1.5, 2), 2 * np.array([[c, -s], [s, c]]))
    assert isinstance(B, Ball)
    assert B.radius == pytest.approx(3.0)


def test_linear_image_singular_rejected():
    with pytest.raises(DomainError):
        linear_image(cube(2), np.array([[1.0, 0.0], [1.0, 0.0]]))


unit2 = st.floats(0, 2 * np.pi).map(lambda t: np.array([np.cos(t), np.sin(t)]))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10 ** 6), u=unit2, w=st.lists(st.floats(0.01, 1), min_size=3,
                                                         max_size=3))
def test_xray_splits_into_radial_functions(seed, u, w):
    K = random_polygon(np.random.default_rng(seed))
    V = K.vertices[:3]
    z = np.asarray(w) @ V / np.sum(w)
    X = xray(K, z, u)
    r = radial_many(K, z, np.stack([u, -u]))
    assert X == pytest.approx(r.sum(), abs=1e-10)
    assert xray(K, z, -u) == pytest.approx(X, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10 ** 6), u=unit2)
def test_support_and_radial_are_polar(seed, u):
    K = random_polygon(np.random.default_rng(seed))
    rho = radial_eval(K, np.zeros(2), u)
    # the radial function of K is the reciprocal of the support function of the polar body
    polar = VPolytope(K.normals / K.offsets[:, None])
    assert rho * support_eval(polar, u) == pytest.approx(1.0, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10 ** 6),
       A=st.lists(st.floats(-1, 1), min_size=4, max_size=4), u=unit2)
def test_support_of_linear_image(seed, A, u):
    A = np.array(A).reshape(2, 2) + 3 * np.eye(2)
    K = random_polygon(np.random.default_rng(seed))
    v = A.T @ u
    r = np.linalg.norm(v)
    assert support_eval(linear_image(K, A), u) == pytest.approx(r * support_eval(K, v / r),
                                                                rel=1e-9, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(axes=st.lists(st.floats(0.2, 3), min_size=3, max_size=3), seed=st.integers(0, 1000))
def test_ellipsoid_support_closed_form(axes, seed):
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    E = linear_image(ball(1.0, 3), Q @ np.diag(axes))
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    M = Q @ np.diag(axes)
    assert support_eval(E, u) == pytest.approx(np.linalg.norm(M.T @ u), rel=1e-10)
