"""Tests for the dense Hermitian linear algebra."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nosig.acceptance import cubic_eigenvalues, quadratic_eigenvalues
from nosig.errors import DimMismatch, NotConverged, NotHermitian, NotSquare
from nosig.linalg import (
    check_hermitian,
    hermitian_eigenvalues,
    hermitian_eigh,
    random_hermitian,
    random_unitary,
    tensor_product,
    trace_norm,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestTensorProduct:
    def test_big_endian_order(self):
        zero, one = np.array([1, 0]), np.array([0, 1])
        # |01> is index 1, |10> is index 2
        assert np.argmax(tensor_product(zero, one)) == 1
        assert np.argmax(tensor_product(one, zero)) == 2

    def test_matches_kron_for_matrices(self, rng):
        a, b, c = (random_hermitian(n, rng) for n in (2, 3, 2))
        np.testing.assert_allclose(tensor_product(a, b, c), np.kron(np.kron(a, b), c))

    def test_rejects_mixed_operands(self):
        with pytest.raises(DimMismatch):
            tensor_product(np.ones(2), np.eye(2))


class TestHermiticity:
    def test_accepts_hermitian(self, rng):
        check_hermitian(random_hermitian(4, rng))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            check_hermitian(np.array([[0, 1], [0, 0]]))

    def test_rejects_non_square(self):
        with pytest.raises(NotSquare):
            check_hermitian(np.ones((2, 3)))


class TestJacobiAgainstOracles:
    def test_diagonal_input(self):
        values, vectors = hermitian_eigh(np.diag([3.0, -1.0, 2.0]))
        np.testing.assert_allclose(values, [-1.0, 2.0, 3.0])
        np.testing.assert_allclose(np.abs(vectors), np.eye(3)[:, [1, 2, 0]])

    def test_pauli_y(self):
        values = hermitian_eigenvalues(np.array([[0, -1j], [1j, 0]]))
        np.testing.assert_allclose(values, [-1.0, 1.0], atol=1e-14)

    @pytest.mark.parametrize("n, oracle", [(2, quadratic_eigenvalues), (3, cubic_eigenvalues)])
    def test_characteristic_polynomial(self, rng, n, oracle):
        for _ in range(200):
            m = random_hermitian(n, rng)
            np.testing.assert_allclose(hermitian_eigenvalues(m), oracle(m), atol=1e-9)

    def test_degenerate_spectrum(self, rng):
        u = random_unitary(4, rng)
        m = u @ np.diag([1.0, 1.0, -2.0, -2.0]) @ u.conj().T
        np.testing.assert_allclose(hermitian_eigenvalues(m), [-2, -2, 1, 1], atol=1e-12)

    def test_largest_supported_size(self, rng):
        m = random_hermitian(32, rng)
        np.testing.assert_allclose(hermitian_eigenvalues(m), np.linalg.eigvalsh(m), atol=1e-10)

    def test_sweep_cap(self, rng, monkeypatch):
        import nosig.linalg as linalg

        monkeypatch.setattr(linalg, "MAX_SWEEPS", 0)
        with pytest.raises(NotConverged):
            linalg.hermitian_eigh(random_hermitian(3, rng))


class TestJacobiProperties:
    @given(seed=seeds, n=st.integers(1, 6))
    def test_reconstruction(self, seed, n):
        m = random_hermitian(n, np.random.default_rng(seed))
        values, vectors = hermitian_eigh(m)
        np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.conj().T, m, atol=1e-10)
        np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(n), atol=1e-10)
        assert np.all(np.diff(values) >= 0)

    @given(seed=seeds, n=st.integers(1, 6))
    def test_trace_and_frobenius(self, seed, n):
        m = random_hermitian(n, np.random.default_rng(seed))
        values = hermitian_eigenvalues(m)
        assert np.sum(values) == pytest.approx(np.trace(m).real, abs=1e-10)
        assert np.sum(values**2) == pytest.approx(np.sum(np.abs(m) ** 2), rel=1e-10)

    @given(seed=seeds, n=st.integers(1, 5))
    def test_unitary_invariance(self, seed, n):
        rng = np.random.default_rng(seed)
        m, u = random_hermitian(n, rng), random_unitary(n, rng)
        np.testing.assert_allclose(hermitian_eigenvalues(u @ m @ u.conj().T), hermitian_eigenvalues(m), atol=1e-10)

    @given(seed=seeds, n=st.integers(1, 5))
    def test_random_unitary_is_unitary(self, seed, n):
        u = random_unitary(n, np.random.default_rng(seed))
        np.testing.assert_allclose(u @ u.conj().T, np.eye(n), atol=1e-12)

    def test_trace_norm_of_projector_difference(self):
        # |0><0| - |+><+| has eigenvalues +-1/sqrt(2)
        plus = np.full((2, 2), 0.5)
        assert trace_norm(np.diag([1.0, 0.0]) - plus) == pytest.approx(np.sqrt(2), abs=1e-12)
