"""Dense complex linear algebra used throughout the package.

All tolerances are in the Frobenius norm and all inner products are the real
form ``<X, Y> = Re tr(X^dagger Y)``, which is ad-invariant on u(n).
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._backend import kernels

__all__ = [
    "HermitianEig",
    "as_matrix",
    "commutator",
    "expm",
    "frobenius_real_inner",
    "hermitian_eig",
    "is_skew_hermitian",
    "real_span_rank",
    "to_real_vector",
    "from_real_vector",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
]

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_matrix(X, name="matrix"):
    """Return ``X`` as a finite square complex128 array or raise ValueError."""
    A = np.asarray(X, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def is_skew_hermitian(X, tol=1e-10):
    X = np.asarray(X)
    scale = max(np.linalg.norm(X), 1.0)
    return np.linalg.norm(X + X.conj().T) <= tol * scale


def commutator(X, Y):
    return X @ Y - Y @ X


def to_real_vector(X):
    """Interleaved real/imaginary entries; dot products equal Re tr(X^dagger Y)."""
    return np.ascontiguousarray(X, dtype=complex).reshape(-1).view(np.float64)


def from_real_vector(v, shape):
    if isinstance(shape, (int, np.integer)):
        shape = (shape, shape)
    return np.ascontiguousarray(v, dtype=np.float64).view(complex).reshape(shape)


def expm(X):
    """Matrix exponential.

    Skew-Hermitian input goes through the Hermitian eigendecomposition of
    ``-iX`` so the result is unitary to rounding; anything else uses Padé
    scaling-and-squaring.
    """
    X = as_matrix(X)
    if is_skew_hermitian(X, 1e-14):
        w, V = np.linalg.eigh(-1j * X)
        return (V * np.exp(1j * w)) @ V.conj().T
    return scipy.linalg.expm(X)


@dataclass(frozen=True)
class HermitianEig:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def hermitian_eig(A, tol=1e-10):
    """Ascending eigenvalues and unitary eigenvectors of a Hermitian matrix."""
    A = as_matrix(A)
    if np.linalg.norm(A - A.conj().T) > tol * max(np.linalg.norm(A), 1e-300):
        raise ValueError("hermitian_eig requires a Hermitian matrix (pass iA for skew-Hermitian A)")
    w, V = np.linalg.eigh(A)
    return HermitianEig(w, V)


def frobenius_real_inner(X, Y):
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    return float(np.real(np.vdot(X, Y)))


def real_span_rank(mats, tol=1e-9):
    """Dimension of the real linear span of ``mats`` and an orthonormal basis for it.

    ``tol`` is relative: a direction is kept when its residual norm exceeds
    ``tol * sqrt(lambda_max)``, where ``lambda_max`` is the largest eigenvalue
    of the Gram matrix of the inputs.
    """
    mats = [np.asarray(M, dtype=complex) for M in mats]
    if not mats:
        raise ValueError("real_span_rank needs at least one matrix")
    shape = mats[0].shape
    if any(M.shape != shape for M in mats):
        raise ValueError("dimension mismatch in real_span_rank input")
    if tol <= 0:
        raise ValueError("tol must be positive")
    V = np.stack([to_real_vector(M) for M in mats])
    lam_max = np.linalg.eigvalsh(V @ V.T)[-1]
    if lam_max <= 0:
        return 0, []
    Q, _ = kernels.orthonormalize(V, tol * np.sqrt(lam_max))
    basis = [from_real_vector(q, shape) for q in Q]
    return len(basis), basis
