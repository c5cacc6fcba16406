import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mahlerlab.errors import SingularMatrix
from mahlerlab.numkit import Definiteness, SymMatrix, det, eigenvalues, inverse, psd_check, sym_eigen

HAND = [[16.0, -24.0], [-24.0, 32.0]]


def test_symmetry_is_exact():
    a = np.array([[1.0, 2.0 + 1e-13], [2.0, 3.0]])
    m = SymMatrix(a)
    assert m[0, 1] == m[1, 0]


def test_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        SymMatrix([[1.0, 2.0], [0.0, 1.0]])


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.eye(2), [1.0, 1.0]),
        (np.diag([2.0, -3.0]), [-3.0, 2.0]),
        # lambda^2 - 48 lambda - 64 = 0
        (HAND, [24 - math.sqrt(640), 24 + math.sqrt(640)]),
    ],
)
def test_eigen_examples(m, expected):
    np.testing.assert_allclose(eigenvalues(m), expected, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize(
    "m, expected",
    [(np.eye(3), 1.0), (np.diag([2.0, 5.0]), 10.0), (HAND, -64.0)],
)
def test_det_examples(m, expected):
    assert det(m) == pytest.approx(expected, rel=1e-14)


def test_det_lu_path_matches_cofactors():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(5, 5))
    assert det(a) == pytest.approx(np.linalg.det(a), rel=1e-12)


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.eye(2), np.eye(2)),
        (np.diag([4.0, 4.0]), np.diag([0.25, 0.25])),
        # cov of the centred triangle: (3 sqrt3 / 8) / (3 sqrt3 / 2) = 1/4
        (np.eye(2) * (3 * math.sqrt(3) / 8) / (3 * math.sqrt(3) / 2), np.diag([4.0, 4.0])),
    ],
)
def test_inverse_examples(m, expected):
    np.testing.assert_allclose(np.asarray(inverse(m)), expected, atol=1e-13)


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        inverse([[1.0, 1.0], [1.0, 1.0]])


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.eye(2), Definiteness.POSITIVE_DEFINITE),
        (np.diag([1.0, -1.0]), Definiteness.INDEFINITE),
        (np.diag([1.0, 0.0]), Definiteness.POSITIVE_SEMIDEFINITE),
        (-np.eye(3), Definiteness.NEGATIVE_DEFINITE),
        (np.diag([-1.0, 0.0]), Definiteness.NEGATIVE_SEMIDEFINITE),
    ],
)
def test_psd_check(m, expected):
    assert psd_check(m, 1e-9) is expected


def test_psd_threshold_is_relative():
    assert psd_check(np.diag([1e6, -1e-4]), 1e-9) is Definiteness.POSITIVE_SEMIDEFINITE
    assert psd_check(np.diag([1.0, -1e-4]), 1e-9) is Definiteness.INDEFINITE


sym_inputs = st.integers(1, 8).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False))
).map(lambda a: a + a.T)


@settings(max_examples=150, deadline=None)
@given(sym_inputs)
def test_eigen_reconstruction(a):
    pairs = sym_eigen(a)
    lam = np.array([p.value for p in pairs])
    q = np.column_stack([p.vector for p in pairs])
    assert np.all(np.diff(lam) >= 0)
    np.testing.assert_allclose(q.T @ q, np.eye(len(a)), atol=1e-12)
    assert np.max(np.abs(q @ np.diag(lam) @ q.T - a)) <= 1e-10 * (1 + np.max(np.abs(a)))


@settings(max_examples=150, deadline=None)
@given(sym_inputs)
def test_det_is_product_of_eigenvalues(a):
    lam = eigenvalues(a)
    prod = float(np.prod(lam))
    scale = float(np.prod(np.maximum(np.abs(lam), 1.0)))
    assert abs(det(a) - prod) <= 1e-9 * scale


def test_inverse_involution_on_seeded_matrices():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 9))
        q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        lam = rng.uniform(0.5, 5.0, n) * rng.choice([-1, 1], n)
        m = SymMatrix(q @ np.diag(lam) @ q.T)
        np.testing.assert_allclose(np.asarray(inverse(inverse(m))), np.asarray(m), atol=1e-9)
        np.testing.assert_allclose(np.asarray(m) @ np.asarray(inverse(m)), np.eye(n), atol=1e-10)
