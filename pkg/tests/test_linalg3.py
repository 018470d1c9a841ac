import numpy as np
import pytest
from hypothesis import given

from tetrasym import linalg3 as la
from tetrasym.errors import SingularMatrix

from conftest import leibniz_det, matrices, vectors


def test_dot_examples():
    assert la.dot([1, 0, 0], [0, 1, 0]) == 0
    assert la.dot([1, 2, 3], [1, 2, 3]) == 14
    assert la.dot([2, 0, 0], [1, 1, 1]) == 2


def test_cross_examples():
    np.testing.assert_array_equal(la.cross([1, 0, 0], [0, 1, 0]), [0, 0, 1])
    np.testing.assert_array_equal(la.cross([1, 2, 3], [1, 2, 3]), [0, 0, 0])
    np.testing.assert_array_equal(la.cross([1, 2, 3], [4, 5, 6]), [-3, 6, -3])


def test_det_examples():
    assert la.det(np.eye(3)) == 1
    assert la.det(la.mat3_from_columns([1, 2, 3], [1, 2, 3], [0, 1, 5])) == 0
    m = la.mat3_from_columns([1, 1, 0], [1, 0, 1], [0, 1, 1])
    assert leibniz_det(m) == -2
    assert la.det(m) == -2


def test_cofactor_examples():
    np.testing.assert_array_equal(la.cofactor(np.eye(3)), np.eye(3))
    np.testing.assert_array_equal(la.cofactor(np.diag([2.0, 3, 4])), np.diag([12.0, 8, 6]))


def test_cofactor_random_residual(rng):
    for _ in range(200):
        m = rng.uniform(-10, 10, (3, 3))
        d = la.det(m)
        res = la.cofactor(m).T @ m - d * np.eye(3)
        assert np.max(np.abs(res)) <= 1e-12 * max(1.0, abs(d)) * 100


def test_solve_inverse_transpose_examples(rng):
    np.testing.assert_array_equal(la.solve_inverse_transpose(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(
        la.solve_inverse_transpose(np.diag([2.0, 4, 5])), np.diag([0.5, 0.25, 0.2]), rtol=1e-15
    )
    for _ in range(100):
        m = rng.normal(size=(3, 3)) + 3 * np.eye(3)
        inv_t = la.solve_inverse_transpose(m)
        assert np.max(np.abs(inv_t @ m.T - np.eye(3))) < 1e-12


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrix):
        la.solve_inverse_transpose(la.mat3_from_columns([1, 2, 3], [2, 4, 6], [0, 0, 1]))
    # the floor is scale relative: a tiny but well-conditioned matrix is fine
    la.solve_inverse_transpose(1e-6 * np.eye(3))


def test_broadcasting_matches_loop(rng):
    ms = rng.normal(size=(50, 3, 3))
    np.testing.assert_allclose(la.det(ms), [la.det(m) for m in ms], rtol=1e-14)
    np.testing.assert_allclose(la.cofactor(ms), [la.cofactor(m) for m in ms], rtol=1e-14)


def test_constructors_reject_non_finite():
    with pytest.raises(ValueError):
        la.vec3(1, float("nan"), 0)
    with pytest.raises(ValueError):
        la.mat3(np.full((3, 3), np.inf))
    with pytest.raises(ValueError):
        la.vec3([1, 2])


@given(vectors, vectors)
def test_cross_is_orthogonal(u, v):
    w = la.cross(u, v)
    nu, nv = la.norm(u), la.norm(v)
    bound = 1e-12 * nu * nv * max(nu, nv)
    assert abs(la.dot(w, u)) <= bound
    assert abs(la.dot(w, v)) <= bound


@given(matrices)
def test_cramer_identity(m):
    d = la.det(m)
    res = la.cofactor(m).T @ m - d * np.eye(3)
    scale = max(1.0, np.max(np.abs(m))) ** 3
    assert np.max(np.abs(res)) <= 1e-12 * (1 + abs(d)) * scale


@given(vectors, vectors, vectors)
def test_triple_product(u, v, w):
    lhs = la.det(la.mat3_from_columns(u, v, w))
    rhs = la.dot(u, la.cross(v, w))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, la.norm(u) * la.norm(v) * la.norm(w))
    assert abs(lhs - leibniz_det(la.mat3_from_columns(u, v, w))) <= 1e-12 * max(
        1.0, la.norm(u) * la.norm(v) * la.norm(w)
    )


@given(matrices)
def test_inverse_transpose_round_trip_through_cofactor(m):
    # Building A = sqrt(det C) C^{-T} must give back cofactor(A) == C.
    C = m + 35 * np.eye(3)  # diagonally dominant, det > 0
    d = la.det(C)
    A = np.sqrt(d) * la.solve_inverse_transpose(C)
    np.testing.assert_allclose(la.cofactor(A), C, rtol=1e-9, atol=1e-9 * np.max(np.abs(C)))
