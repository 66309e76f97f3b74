import numpy as np
import pytest

from spindiv.errors import DimensionMismatchError, NoConvergenceError, NotHermitianError
from spindiv.linalg import hermitian_eigen, hermitian_eigenvalues, kron, trace_norm

from conftest import random_hermitian


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_diagonal():
    got = kron(np.diag([1.0, 2.0]), np.eye(2))
    assert np.array_equal(got, np.diag([1.0, 1.0, 2.0, 2.0]))


def test_kron_elementwise_definition(rng):
    # vectorized complex multiply may fuse operations; compare to the scalar
    # product with a last-bit tolerance
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    k = kron(a, b)
    for i in range(2):
        for j in range(2):
            for p in range(2):
                for q in range(2):
                    assert abs(k[i * 2 + p, j * 2 + q] - a[i, j] * b[p, q]) <= 1e-15


def test_eigen_diagonal_descending():
    dec = hermitian_eigen(np.diag([3.0, 1.0, 2.0]).astype(complex))
    assert np.allclose(dec.eigenvalues, [3.0, 2.0, 1.0], atol=0)


def test_eigen_pauli_x():
    dec = hermitian_eigen(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    assert np.allclose(dec.eigenvalues, [1.0, -1.0], atol=1e-15)


def test_eigen_trace_identity(rng):
    a = random_hermitian(rng, 9)
    dec = hermitian_eigen(a)
    assert abs(np.sum(dec.eigenvalues) - np.trace(a).real) <= 1e-10


@pytest.mark.parametrize("n", [2, 3, 5, 9, 16])
def test_eigen_reconstruction_and_unitarity(rng, n):
    a = random_hermitian(rng, n)
    dec = hermitian_eigen(a)
    scale = np.max(np.abs(a))
    assert np.max(np.abs(dec.reconstruct() - a)) <= 1e-10 * scale
    gram = dec.eigenvectors.conj().T @ dec.eigenvectors
    assert np.max(np.abs(gram - np.eye(n))) <= 1e-10


def test_eigen_matches_lapack(rng):
    a = random_hermitian(rng, 12)
    dec = hermitian_eigen(a)
    assert np.allclose(dec.eigenvalues, np.linalg.eigvalsh(a)[::-1], atol=1e-12)


def test_eigen_deterministic_and_phase_fixed(rng):
    a = random_hermitian(rng, 7)
    d1 = hermitian_eigen(a)
    d2 = hermitian_eigen(a.copy())
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    assert np.array_equal(d1.eigenvectors, d2.eigenvectors)
    for k in range(7):
        col = d1.eigenvectors[:, k]
        lead = col[np.argmax(np.abs(col) > 1e-8 * np.abs(col).max())]
        assert abs(lead.imag) <= 1e-12 * abs(lead)
        assert lead.real > 0


def test_eigen_rejects_non_hermitian(rng):
    with pytest.raises(NotHermitianError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_eigen_rejects_non_square():
    with pytest.raises(DimensionMismatchError):
        hermitian_eigen(np.zeros((2, 3), dtype=complex))


def test_eigen_sweep_budget(rng):
    a = random_hermitian(rng, 5)
    with pytest.raises(NoConvergenceError):
        hermitian_eigen(a, max_sweeps=0)


def test_trace_norm_identity():
    assert trace_norm(np.eye(9, dtype=complex)) == pytest.approx(9.0, abs=1e-12)


def test_trace_norm_rank_one_projector(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    assert trace_norm(np.outer(v, v.conj())) == pytest.approx(1.0, abs=1e-12)


def test_trace_norm_signed_diagonal():
    assert trace_norm(np.diag([1.0, -2.0]).astype(complex)) == pytest.approx(3.0, abs=1e-14)


def test_trace_norm_bounds_trace(rng):
    for _ in range(20):
        a = random_hermitian(rng, 6)
        assert trace_norm(a) >= abs(np.trace(a).real) - 1e-12


def test_trace_norm_unitary_invariance(rng):
    a = random_hermitian(rng, 6)
    u = hermitian_eigen(random_hermitian(rng, 6)).eigenvectors
    tn = trace_norm(a)
    assert abs(trace_norm(u @ a @ u.conj().T) - tn) <= 1e-9 * tn


def test_trace_norm_general_matches_svd(rng):
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    ref = np.linalg.svd(a, compute_uv=False).sum()
    assert trace_norm(a) == pytest.approx(ref, rel=1e-12)
