"""State controllability on adjoint orbits of density matrices.

Two density matrices lie on one unitary orbit exactly when their spectra
(distinct eigenvalues with multiplicities) agree. On the Grassmannian
``Gr_k(C^n)`` of rank-k projectors, the system ``P' = [X_u, P]`` is
controllable exactly when the upper-right ``k x (n-k)`` blocks of its
generated Lie algebra span all of ``Hom(C^k, C^(n-k))``.
"""
from dataclasses import dataclass

import numpy as np

from .lie import lie_closure
from .linalg import as_matrix
from .reach import evaluate

__all__ = [
    "GrassmannPoint",
    "DensitySpectrum",
    "GrassmannVerdict",
    "grassmann_point",
    "density_spectrum",
    "same_orbit",
    "grassmann_controllable",
    "adjoint_flow",
]


@dataclass(frozen=True)
class GrassmannPoint:
    n: int
    k: int
    P: np.ndarray

    def __post_init__(self):
        P = as_matrix(self.P, "P")
        if P.shape != (self.n, self.n):
            raise ValueError("projector has the wrong shape")
        if (np.linalg.norm(P - P.conj().T) > 1e-9 or np.linalg.norm(P @ P - P) > 1e-9
                or abs(np.trace(P) - self.k) > 1e-9):
            raise ValueError("P must be a Hermitian idempotent with trace k")


def grassmann_point(n, k):
    """Projector onto the first ``k`` coordinate axes."""
    return GrassmannPoint(n, k, np.diag([1.0] * k + [0.0] * (n - k)).astype(complex))


@dataclass(frozen=True)
class DensitySpectrum:
    pairs: tuple

    def matches(self, other, tol=1e-8):
        if len(self.pairs) != len(other.pairs):
            return False
        return all(m1 == m2 and abs(l1 - l2) <= tol
                   for (l1, m1), (l2, m2) in zip(self.pairs, other.pairs))


def _validate_density(rho):
    rho = as_matrix(rho, "density matrix")
    if np.linalg.norm(rho - rho.conj().T) > 1e-9:
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho) - 1) > 1e-9:
        raise ValueError(f"density matrix must have trace 1, got {np.trace(rho).real:.12g}")
    w = np.linalg.eigvalsh(rho)
    if w[0] < -1e-9:
        raise ValueError(f"density matrix has negative eigenvalue {w[0]:.3g}")
    return rho, w


def density_spectrum(rho, tol=1e-8):
    """Distinct positive eigenvalues, strictly decreasing, with multiplicities."""
    _, w = _validate_density(rho)
    pairs = []
    for lam in w[::-1]:
        if lam <= tol:
            break
        if pairs and pairs[-1][0] - lam <= tol:
            # cluster: keep the running mean, bump the multiplicity
            mean, m = pairs[-1]
            pairs[-1] = ((mean * m + lam) / (m + 1), m + 1)
        else:
            pairs.append((float(lam), 1))
    return DensitySpectrum(tuple((float(l), int(m)) for l, m in pairs))


def same_orbit(rho1, rho2, tol=1e-8):
    r1, _ = _validate_density(rho1)
    r2, _ = _validate_density(rho2)
    if r1.shape != r2.shape:
        return False
    return density_spectrum(r1, tol).matches(density_spectrum(r2, tol), tol)


@dataclass(frozen=True)
class GrassmannVerdict:
    controllable: bool
    rank: int
    required: int
    margin: float | None

    def __bool__(self):
        return self.controllable


def grassmann_controllable(sys, k, tol=1e-9):
    """Check the upper-right block criterion for ``Gr_k(C^n)``.

    ``margin`` is the ``2k(n-k)``-th largest singular value of the stacked
    blocks (real coordinates) relative to the largest; it is 0 when the
    criterion fails and None for the one-point orbits ``k = 0`` and ``k = n``.
    """
    n = sys.n
    if int(k) != k or not 0 <= k <= n:
        raise ValueError(f"k must be an integer in [0, {n}], got {k!r}")
    k = int(k)
    required = 2 * k * (n - k)
    if required == 0:
        return GrassmannVerdict(True, 0, 0, None)
    alg = lie_closure(sys, tol)
    blocks = np.stack([np.ascontiguousarray(B[:k, k:]).reshape(-1).view(np.float64) for B in alg.basis])
    s = np.linalg.svd(blocks, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return GrassmannVerdict(False, 0, required, 0.0)
    rank = int(np.sum(s > tol * s[0]))
    if rank < required:
        return GrassmannVerdict(False, rank, required, 0.0)
    return GrassmannVerdict(True, rank, required, float(s[required - 1] / s[0]))


def adjoint_flow(rho0, s):
    """``g rho0 g^dagger`` with ``g`` the unitary of schedule ``s``."""
    rho0, _ = _validate_density(rho0)
    g = evaluate(s)
    return g @ rho0 @ g.conj().T
