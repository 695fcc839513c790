"""Tests for the dense linear algebra foundation."""

import numpy as np
import pytest

from tenfold import linalg
from tenfold.errors import InputShapeError
from tenfold.linalg import (RngStream, eig_hermitian, haar_orthogonal,
                            haar_symplectic_unitary, haar_unitary, nullspace,
                            symplectic_form)

SX = np.array([[0, 1], [1, 0]], dtype=complex)


class TestRngStream:
    def test_identical_seed_bit_exact(self):
        a = RngStream(123).normal(100)
        b = RngStream(123).normal(100)
        assert np.array_equal(a, b)

    def test_children_deterministic_and_distinct(self):
        parent = RngStream(5)
        kids = [parent.child(i).seed for i in range(10)]
        assert len(set(kids)) == 10
        assert kids == [RngStream(5).child(i).seed for i in range(10)]
        assert all(k != parent.seed for k in kids)

    def test_child_streams_differ_from_parent_stream(self):
        parent = RngStream(5)
        child = parent.child(0)
        assert not np.allclose(RngStream(5).normal(8), child.normal(8))


class TestEigHermitian:
    def test_identity(self):
        es = eig_hermitian(np.eye(2))
        assert np.allclose(es.values, [1.0, 1.0])

    def test_pauli_x(self):
        es = eig_hermitian(SX)
        assert np.allclose(es.values, [-1.0, 1.0])
        # eigenvectors (1, -/+1)/sqrt(2) up to phase
        for col, expected in zip(es.vectors.T, ([1, -1], [1, 1])):
            v = col / col[np.argmax(np.abs(col))]
            w = np.array(expected) / expected[np.argmax(np.abs(expected))]
            assert np.allclose(v / np.linalg.norm(v) * np.sqrt(2), w)

    def test_reconstruction_random(self, rng):
        m = rng.complex_normal((8, 8))
        h = m + m.conj().T
        es = eig_hermitian(h)
        recon = es.vectors @ np.diag(es.values) @ es.vectors.conj().T
        assert linalg.frob(h - recon) <= 1e-10 * linalg.frob(h)
        assert np.all(np.diff(es.values) >= 0)

    def test_rejects_non_square(self):
        with pytest.raises(InputShapeError):
            eig_hermitian(np.ones((2, 3)))

    def test_rejects_non_hermitian(self, rng):
        m = rng.complex_normal((4, 4))
        with pytest.raises(InputShapeError):
            eig_hermitian(m + m.conj().T + 1e-3 * rng.complex_normal((4, 4)))


class TestHaarUnitary:
    def test_scalar_case(self, rng):
        u = haar_unitary(1, rng)
        assert abs(abs(u[0, 0]) - 1.0) < 1e-14

    def test_determinism(self):
        a = haar_unitary(4, RngStream(9))
        b = haar_unitary(4, RngStream(9))
        assert np.array_equal(a, b)

    def test_rejects_zero_dim(self, rng):
        with pytest.raises(InputShapeError):
            haar_unitary(0, rng)

    @pytest.mark.parametrize("n", [1, 2, 3, 8, 32, 64])
    def test_unitary_to_tolerance(self, n):
        u = haar_unitary(n, RngStream(n))
        resid = linalg.frob(u.conj().T @ u - np.eye(n))
        assert resid <= 1e-12 * np.sqrt(n)

    def test_trace_moment(self):
        # Haar second moment: E |tr U|^2 = 1, checked by Monte Carlo.
        rng = RngStream(42)
        count = 20_000
        total = 0.0
        for _ in range(count):
            u = haar_unitary(6, rng)
            total += abs(np.trace(u)) ** 2
        assert abs(total / count - 1.0) < 0.05

    def test_eigenphase_uniformity(self):
        # the phase correction matters: column phases must not cluster
        rng = RngStream(17)
        phases = np.concatenate([np.angle(np.linalg.eigvals(
            haar_unitary(8, rng))) for _ in range(200)])
        hist, _ = np.histogram(phases, bins=8, range=(-np.pi, np.pi))
        assert hist.min() > 0.7 * hist.mean()


class TestHaarOrthogonalSymplectic:
    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_orthogonal(self, n):
        q = haar_orthogonal(n, RngStream(n))
        assert linalg.frob(q.T @ q - np.eye(n)) < 1e-12 * np.sqrt(n)

    def test_special_orthogonal_determinant(self):
        rng = RngStream(5)
        for _ in range(10):
            q = haar_orthogonal(5, rng, special=True)
            assert abs(np.linalg.det(q) - 1.0) < 1e-10

    @pytest.mark.parametrize("n2", [2, 4, 6])
    def test_symplectic_unitary(self, n2):
        u = haar_symplectic_unitary(n2, RngStream(n2))
        j = symplectic_form(n2 // 2)
        assert linalg.frob(u.conj().T @ u - np.eye(n2)) < 1e-12 * np.sqrt(n2)
        assert linalg.frob(u.T @ j @ u - j) < 1e-10


class TestNullspace:
    def test_identity_has_trivial_nullspace(self):
        assert nullspace(np.eye(3), 1e-8).shape == (3, 0)

    def test_zero_matrix_full_nullspace(self):
        ns = nullspace(np.zeros((3, 3)), 1e-8)
        assert ns.shape == (3, 3)

    def test_threshold_semantics(self):
        a = np.diag([1.0, 1e-14, 2.0])
        ns = nullspace(a, 1e-8)
        assert ns.shape == (3, 1)
        assert abs(abs(ns[1, 0]) - 1.0) < 1e-12

    def test_rectangular(self, rng):
        a = rng.complex_normal((2, 5))
        ns = nullspace(a, 1e-10)
        assert ns.shape == (5, 3)
        assert np.allclose(a @ ns, 0, atol=1e-9)
        assert np.allclose(ns.conj().T @ ns, np.eye(3), atol=1e-12)


class TestPredicates:
    def test_hermitian_and_symmetric(self):
        assert linalg.is_hermitian(SX)
        assert linalg.is_symmetric(SX)
        assert not linalg.is_skew(SX)
        assert linalg.is_unitary(SX)

    def test_tolerance_is_explicit(self):
        almost = SX + 1e-6 * np.eye(2) * 1j
        assert not linalg.is_hermitian(almost, tol=1e-8)
        assert linalg.is_hermitian(almost, tol=1e-3)
