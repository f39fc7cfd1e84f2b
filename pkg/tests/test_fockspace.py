import numpy as np
import pytest

from spectralforge import fockspace
from spectralforge.errors import InputError
from spectralforge.fockspace import (
    TruncationBasis,
    eigendecompose,
    ladder_xp,
    matrix_from_json,
    matrix_to_json,
    number_operator,
    synthesize,
)


def test_number_operator_examples():
    b1 = TruncationBasis.build(1, 3)
    assert np.array_equal(np.diag(number_operator(b1, 1)).real, [0, 1, 2])
    b2 = TruncationBasis.build(2, 3)  # (0,0), (0,1), (1,0)
    assert np.array_equal(np.diag(number_operator(b2, 1)).real, [0, 0, 1])
    assert np.array_equal(np.diag(number_operator(b2, 2)).real, [0, 1, 0])


def test_number_operator_mode_range():
    b = TruncationBasis.build(2, 4)
    with pytest.raises(InputError):
        number_operator(b, 0)
    with pytest.raises(InputError):
        number_operator(b, 3)


def test_number_operators_commute_exactly():
    b = TruncationBasis.build(3, 30)
    ops = [number_operator(b, i) for i in (1, 2, 3)]
    for Ni in ops:
        for Nj in ops:
            assert np.abs(Ni @ Nj - Nj @ Ni).max() == 0.0


def test_ladder_xp_small_cases():
    X, P = ladder_xp(2)
    s = 1 / np.sqrt(2)
    assert np.allclose(X, [[0, s], [s, 0]])
    assert np.allclose(P, [[0, -1j * s], [1j * s, 0]])
    X3, P3 = ladder_xp(3)
    assert np.allclose(X3 @ X3 + P3 @ P3, np.diag([1.0, 3.0, 2.0]))


def test_ladder_truncation_defect_location():
    # (X^2 + P^2 - 1)/2 matches the number operator except on the top state
    K = 12
    X, P = ladder_xp(K)
    N = (X @ X + P @ P - np.eye(K)) / 2
    diag = np.diag(N).real
    assert np.allclose(diag[: K - 1], np.arange(K - 1))
    assert diag[K - 1] == pytest.approx((K - 1) / 2 - 1 / 2)  # missing a a† term
    assert np.abs(N - np.diag(diag)).max() < 1e-12


def test_ladder_equals_aadag_plus_adaga():
    K = 8
    X, P = ladder_xp(K)
    a = np.diag(np.sqrt(np.arange(1, K)), k=1).astype(complex)
    assert np.allclose(X @ X + P @ P, a @ a.conj().T + a.conj().T @ a)


def test_ladder_hermitian_and_k_validation():
    X, P = ladder_xp(5)
    assert fockspace.is_hermitian(X) and fockspace.is_hermitian(P)
    with pytest.raises(InputError):
        ladder_xp(1)


def test_synthesize_examples():
    b1 = TruncationBasis.build(1, 3)
    assert np.array_equal(np.diag(synthesize([5, 7, 7], b1)).real, [5, 7, 7])
    b2 = TruncationBasis.build(2, 3)
    A = synthesize([5, 7, 9], b2)
    assert np.array_equal(np.diag(A).real, [5, 7, 9])
    b0 = TruncationBasis.build(3, 1)
    assert synthesize([42.0], b0).shape == (1, 1)


def test_synthesize_commutes_with_number_operators():
    b = TruncationBasis.build(2, 20)
    A = synthesize(np.random.default_rng(0).normal(size=20), b)
    for i in (1, 2):
        N = number_operator(b, i)
        assert np.abs(A @ N - N @ A).max() == 0.0


def test_synthesize_spectrum_is_exact_multiset():
    rng = np.random.default_rng(1)
    seq = rng.integers(0, 5, size=50).astype(float)
    b = TruncationBasis.build(3, 40)
    A = synthesize(seq, b)
    assert sorted(np.diag(A).real) == sorted(seq[:40])


def test_synthesize_requires_enough_energies():
    b = TruncationBasis.build(1, 5)
    with pytest.raises(InputError):
        synthesize([1.0, 2.0], b)


def test_eigendecompose_examples():
    w, _ = eigendecompose(np.diag([3.0, 1.0, 2.0]).astype(complex))
    assert np.allclose(w, [1, 2, 3])
    w2, _ = eigendecompose(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(w2, [-1, 1])


def test_eigendecompose_reconstruction():
    rng = np.random.default_rng(2)
    M = rng.normal(size=(50, 50)) + 1j * rng.normal(size=(50, 50))
    M = (M + M.conj().T) / 2
    w, V = eigendecompose(M)
    rel = np.linalg.norm(V @ np.diag(w) @ V.conj().T - M, "fro") / np.linalg.norm(M, "fro")
    assert rel < 1e-10
    assert np.abs(V.conj().T @ V - np.eye(50)).max() <= 1e-10 * 50


def test_eigendecompose_rejects_non_hermitian():
    with pytest.raises(InputError):
        eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_matrix_json_roundtrip():
    rng = np.random.default_rng(3)
    M = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    back = matrix_from_json(matrix_to_json(M))
    assert np.array_equal(back, M)


def test_matrix_json_validation():
    with pytest.raises(InputError):
        matrix_from_json('{"dim": 2, "re": [1.0], "im": [0.0]}')
