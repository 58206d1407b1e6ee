"""Lie closure of skew-Hermitian generators and transformation controllability.

For a right-invariant system on a compact group the set reachable from the
identity is the connected subgroup whose Lie algebra is generated by the
control directions, whatever the control class. Controllability therefore
reduces to comparing the dimension of that generated algebra with the
dimension of the ambient group.
"""
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .linalg import as_matrix, from_real_vector, to_real_vector

__all__ = [
    "AMBIENTS",
    "AlgebraBasis",
    "GeneratorSystem",
    "Verdict",
    "ambient_dimension",
    "contains",
    "is_transformation_controllable",
    "lie_closure",
    "lie_closure_of",
]

AMBIENTS = ("U(n)", "SU(n)")


def _normalize_ambient(ambient, n):
    key = str(ambient).replace(" ", "").upper()
    if key in ("U(N)", f"U({n})"):
        return "U(n)"
    if key in ("SU(N)", f"SU({n})"):
        return "SU(n)"
    raise ValueError(f"unknown ambient group {ambient!r}; expected U(n) or SU(n)")


def ambient_dimension(n, ambient):
    return n * n if ambient == "U(n)" else n * n - 1


@dataclass(frozen=True)
class GeneratorSystem:
    """Named skew-Hermitian generators acting on C^n."""

    n: int
    generators: tuple
    ambient: str = "U(n)"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "ambient", _normalize_ambient(self.ambient, self.n))
        gens = []
        seen = set()
        for name, X in self.generators:
            name = str(name)
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
            X = as_matrix(X, f"generator {name!r}")
            if X.shape != (self.n, self.n):
                raise ValueError(f"generator {name!r} has shape {X.shape}, expected {(self.n, self.n)}")
            scale = max(np.linalg.norm(X), 1.0)
            if np.linalg.norm(X + X.conj().T) > 1e-10 * scale:
                raise ValueError(f"generator {name!r} is not skew-Hermitian")
            if self.ambient == "SU(n)" and abs(np.trace(X)) > 1e-10 * scale:
                raise ValueError(f"generator {name!r} is not traceless but the ambient group is SU(n)")
            X = X.copy()
            X.setflags(write=False)
            gens.append((name, X))
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def from_matrices(cls, mats, ambient="U(n)", names=None):
        mats = [np.asarray(M, dtype=complex) for M in mats]
        if not mats:
            raise ValueError("need at least one generator")
        if names is None:
            names = [f"X{k}" for k in range(len(mats))]
        return cls(mats[0].shape[0], tuple(zip(names, mats)), ambient)

    @property
    def names(self):
        return [name for name, _ in self.generators]

    @property
    def matrices(self):
        return [X for _, X in self.generators]

    def __getitem__(self, name):
        for key, X in self.generators:
            if key == name:
                return X
        raise KeyError(name)


@dataclass(frozen=True)
class AlgebraBasis:
    """Orthonormal basis (under Re tr(X^dagger Y)) of a real matrix Lie algebra."""

    basis: np.ndarray
    generation_depth: int = 0
    n: int = field(init=False)

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=complex)
        if B.ndim != 3 or B.shape[1] != B.shape[2]:
            raise ValueError("basis must have shape (d, n, n)")
        B.setflags(write=False)
        object.__setattr__(self, "basis", B)
        object.__setattr__(self, "n", B.shape[1])

    @property
    def dim_algebra(self):
        return self.basis.shape[0]

    def __len__(self):
        return self.dim_algebra

    def projection(self, X):
        if self.dim_algebra == 0:
            return np.zeros_like(X)
        coeffs = np.real(np.einsum("kij,ij->k", self.basis.conj(), X))
        return np.einsum("k,kij->ij", coeffs, self.basis)

    def contains_identity_direction(self, tol=1e-9):
        """Whether i*1 (the centre of u(n)) lies in the algebra."""
        return contains(self, 1j * np.eye(self.n), tol)

    def closure_defect(self):
        """Largest distance of a pairwise bracket from the span."""
        worst = 0.0
        for a in self.basis:
            C = np.einsum("ij,kjl->kil", a, self.basis) - np.einsum("kij,jl->kil", self.basis, a)
            for c in C:
                worst = max(worst, float(np.linalg.norm(c - self.projection(c))))
        return worst


def _orthonormal_rows(mats, tol):
    V = np.stack([to_real_vector(M) for M in mats])
    lam_max = np.linalg.eigvalsh(V @ V.T)[-1]
    if lam_max <= 0:
        return np.zeros((0, V.shape[1]))
    Q, _ = kernels.orthonormalize(V, tol * np.sqrt(lam_max))
    return Q


def lie_closure_of(mats, tol=1e-9, max_sweeps=None):
    """Lie closure of a list of skew-Hermitian matrices (no ambient bookkeeping).

    The generators are orthonormalized first (directions below ``tol`` relative
    to the largest Gram eigenvalue are dropped); brackets of unit-norm basis
    elements are then added while their residual exceeds ``tol``.
    """
    mats = [np.asarray(M, dtype=complex) for M in mats]
    if not mats:
        raise ValueError("need at least one generator")
    n = mats[0].shape[0]
    traceless = all(abs(np.trace(M)) <= 1e-10 * max(np.linalg.norm(M), 1.0) for M in mats)
    cap = n * n - 1 if traceless and n > 1 else n * n
    Q0 = _orthonormal_rows(mats, tol)
    if Q0.shape[0] == 0:
        raise ValueError("all generators are zero")
    Q = np.zeros((cap, 2 * n * n))
    count = min(Q0.shape[0], cap)
    Q[:count] = Q0[:count]
    if max_sweeps is None:
        max_sweeps = n * n
    count, sweeps = kernels.saturate(Q, count, n, float(tol), int(max_sweeps))
    basis = np.stack([from_real_vector(q, n) for q in Q[:count]])
    return AlgebraBasis(basis, generation_depth=int(sweeps))


def lie_closure(sys, tol=1e-9):
    """Smallest real Lie algebra containing every generator of ``sys``."""
    return lie_closure_of(sys.matrices, tol=tol)


@dataclass(frozen=True)
class Verdict:
    controllable: bool
    dim_algebra: int
    dim_ambient: int
    ambient: str

    def __str__(self):
        return "controllable" if self.controllable else f"subgroup({self.dim_algebra})"


def is_transformation_controllable(sys, tol=1e-9):
    alg = lie_closure(sys, tol)
    target = ambient_dimension(sys.n, sys.ambient)
    return Verdict(alg.dim_algebra == target, alg.dim_algebra, target, sys.ambient)


def contains(basis, X, tol=1e-9):
    """True iff ``X`` is within ``tol * ||X||_F`` of the span of ``basis``."""
    X = np.asarray(X, dtype=complex)
    if X.shape != (basis.n, basis.n):
        raise ValueError(f"dimension mismatch: {X.shape} vs algebra on C^{basis.n}")
    nrm = np.linalg.norm(X)
    if nrm == 0:
        return True
    return bool(np.linalg.norm(X - basis.projection(X)) <= tol * nrm)
