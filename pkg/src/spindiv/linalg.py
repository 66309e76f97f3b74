"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy.ndarray`` of complex128; every public operation
treats its inputs as immutable values and returns fresh arrays.  The
Hermitian eigensolver is a cyclic Jacobi iteration (complex Givens
rotations) living in the kernel backend; it is deliberately dependency-free
and adequate for the dense sizes this package works at (n <= 200).
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DimensionMismatchError, NoConvergenceError, NotHermitianError

HERMITICITY_RTOL = 1e-9

_JACOBI_TOL = 1e-15
_JACOBI_MAX_SWEEPS = 100


def as_matrix(a):
    """Coerce to a 2-D complex128 array, rejecting anything else."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={m.ndim}")
    return m


def kron(a, b):
    """Kronecker product of two dense matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def hermiticity_defect(a):
    """Largest magnitude of (a - a^dag)/2... relative defect is up to the caller."""
    a = as_matrix(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(a, rtol=HERMITICITY_RTOL):
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        return True
    return hermiticity_defect(a) <= rtol * scale


@dataclass(frozen=True)
class HermitianEigenDecomposition:
    """Eigenvalues sorted descending; eigenvector columns match them."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _fix_column_phases(v):
    """Make the first non-negligible component of each column real positive."""
    n = v.shape[1]
    for k in range(n):
        col = v[:, k]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        idx = int(np.argmax(mags > 1e-8 * top))
        z = col[idx]
        if abs(z) > 0.0:
            v[:, k] = col * (np.conj(z) / abs(z))
    return v


def hermitian_eigen(a, max_sweeps=_JACOBI_MAX_SWEEPS):
    """Full eigendecomposition of a Hermitian matrix.

    Ordering is deterministic: eigenvalues descending (stable sort), each
    eigenvector phase fixed so its first non-negligible component is real
    and positive.

    Raises
    ------
    NotHermitianError
        if the relative symmetry defect exceeds 1e-9.
    NoConvergenceError
        if the Jacobi sweep budget is exhausted.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"eigendecomposition needs a square matrix, got {a.shape}")
    if not is_hermitian(a):
        raise NotHermitianError(
            f"matrix is not Hermitian within rtol={HERMITICITY_RTOL:g} (defect {hermiticity_defect(a):.3e})"
        )
    sym = 0.5 * (a + a.conj().T)
    w, v, sweeps = kernels.jacobi_hermitian(sym, _JACOBI_TOL, max_sweeps)
    if sweeps < 0:
        raise NoConvergenceError(f"Jacobi solver did not converge within {max_sweeps} sweeps")
    order = np.argsort(-w, kind="stable")
    w = np.ascontiguousarray(w[order])
    v = np.ascontiguousarray(v[:, order])
    v = _fix_column_phases(v)
    return HermitianEigenDecomposition(eigenvalues=w, eigenvectors=v)


def hermitian_eigenvalues(a, max_sweeps=_JACOBI_MAX_SWEEPS):
    """Descending eigenvalues only (same path as hermitian_eigen)."""
    return hermitian_eigen(a, max_sweeps=max_sweeps).eigenvalues


def trace_norm(a):
    """Trace norm (sum of singular values) of a square matrix.

    Hermitian inputs (within the 1e-9 relative tolerance) take the fast
    path sum|eigenvalue|; anything else goes through the eigenvalues of
    a^dag a.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"trace norm needs a square matrix, got {a.shape}")
    if a.size == 0:
        return 0.0
    if is_hermitian(a):
        w = hermitian_eigenvalues(0.5 * (a + a.conj().T))
        return float(np.sum(np.abs(w)))
    gram = a.conj().T @ a
    mu = hermitian_eigenvalues(0.5 * (gram + gram.conj().T))
    return float(np.sum(np.sqrt(np.clip(mu, 0.0, None))))
