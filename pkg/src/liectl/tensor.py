"""Kronecker-sum embeddings and one-element extensions across tensor products.

Inside u(mn) the Lie algebra of U(m) x U(n) is the Kronecker-sum subalgebra
``L = u(m) (x) 1 + 1 (x) u(n)``. Its orthogonal complement ``su(m) (x) i su(n)``
is irreducible under the adjoint action of the product group, so adding any
single element outside ``L`` generates all of u(mn). Every extension returned
here is checked by running the closure, not assumed.
"""
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import PreconditionError
from .lie import AlgebraBasis, contains, lie_closure_of
from .linalg import as_matrix, is_skew_hermitian, real_span_rank
from .su import weyl_real_basis

__all__ = [
    "TensorFactorization",
    "ExtensionResult",
    "ChainPlan",
    "kron_sum_embed",
    "unitary_algebra_basis",
    "product_subalgebra",
    "complement_basis",
    "default_candidate",
    "minimal_extension",
    "chain_plan",
    "dim_check_tensor",
    "MAX_VERIFIED_DIM",
]

MAX_VERIFIED_DIM = 8


def _check_dims(*dims):
    for d in dims:
        if int(d) != d or d < 2:
            raise ValueError(f"factor dimensions must be integers >= 2, got {d!r}")


@dataclass(frozen=True)
class TensorFactorization:
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("need at least one factor")
        _check_dims(*dims)
        object.__setattr__(self, "dims", dims)

    @property
    def total(self):
        return prod(self.dims)


def kron_sum_embed(u1, u2):
    """``u1 (x) 1 + 1 (x) u2``."""
    u1 = as_matrix(u1, "u1")
    u2 = as_matrix(u2, "u2")
    if not (is_skew_hermitian(u1) and is_skew_hermitian(u2)):
        raise ValueError("kron_sum_embed needs skew-Hermitian factors")
    return np.kron(u1, np.eye(u2.shape[0])) + np.kron(np.eye(u1.shape[0]), u2)


def unitary_algebra_basis(m):
    """A basis of u(m): the su(m) Weyl-type basis plus i*1."""
    return weyl_real_basis(m) + [1j * np.eye(m, dtype=complex)]


def product_subalgebra(m, n):
    """Orthonormal basis of ``u(m) (x) 1 + 1 (x) u(n)``; dimension m^2 + n^2 - 1."""
    _check_dims(m, n)
    mats = [np.kron(a, np.eye(n)) for a in unitary_algebra_basis(m)]
    mats += [np.kron(np.eye(m), b) for b in unitary_algebra_basis(n)]
    _, basis = real_span_rank(mats)
    return AlgebraBasis(np.stack(basis))


def complement_basis(m, n):
    """Spanning set of ``su(m) (x) i su(n)``: ``i * (a (x) b)`` is skew for skew a, b."""
    _check_dims(m, n)
    return [1j * np.kron(a, b) for a in weyl_real_basis(m) for b in weyl_real_basis(n)]


def default_candidate(m, n):
    """``i * (h_1 (x) h_1)`` from the first Cartan element of each factor."""
    return complement_basis(m, n)[0]


@dataclass(frozen=True)
class ExtensionResult:
    X: np.ndarray
    verified: bool
    dim: int | None
    target_dim: int
    note: str = ""


def minimal_extension(m, n, candidate=None, tol=1e-9):
    """Add one element to ``L`` and check the closure reaches u(mn).

    Raises :class:`PreconditionError` if the candidate already lies in ``L``.
    For ``m*n > MAX_VERIFIED_DIM`` the closure is not run and the result is
    reported as unverified.
    """
    _check_dims(m, n)
    N = m * n
    if candidate is None:
        X = default_candidate(m, n)
    else:
        X = as_matrix(candidate, "candidate")
        if X.shape != (N, N):
            raise ValueError(f"candidate must be {N}x{N}, got {X.shape}")
        if not is_skew_hermitian(X):
            raise ValueError("candidate must be skew-Hermitian")
    L = product_subalgebra(m, n)
    if contains(L, X, 1e-8):
        raise PreconditionError(
            "candidate lies inside u(m)(x)1 + 1(x)u(n); an extension needs an element outside it"
        )
    target = dim_check_tensor(m, n)
    if N > MAX_VERIFIED_DIM:
        return ExtensionResult(X, False, None, target, "unverified (size)")
    dim = lie_closure_of(list(L.basis) + [X], tol=tol).dim_algebra
    return ExtensionResult(X, dim == target, dim, target)


@dataclass(frozen=True)
class ChainPlan:
    extension_count: int
    join_tree: object
    joins: tuple

    def as_json(self):
        def enc(node):
            return node if isinstance(node, int) else [enc(c) for c in node]

        return {"extension_count": self.extension_count, "join_tree": enc(self.join_tree),
                "joins": [list(j) for j in self.joins]}


def chain_plan(f, shape="balanced"):
    """Pairing order for building U(V_1 (x) ... (x) V_r) from the factor groups.

    Each binary join costs one extra element, so the count is r - 1 whatever
    the tree shape. ``join_tree`` nests 0-based factor indices; ``joins`` lists
    the (left dim, right dim) of each join in the order performed.
    """
    if not isinstance(f, TensorFactorization):
        f = TensorFactorization(tuple(f))
    nodes = [(k, d) for k, d in enumerate(f.dims)]
    joins = []
    if shape == "balanced":
        while len(nodes) > 1:
            nxt = []
            for k in range(0, len(nodes) - 1, 2):
                (ta, da), (tb, db) = nodes[k], nodes[k + 1]
                joins.append((da, db))
                nxt.append(((ta, tb), da * db))
            if len(nodes) % 2:
                nxt.append(nodes[-1])
            nodes = nxt
    elif shape == "left":
        while len(nodes) > 1:
            (ta, da), (tb, db) = nodes[0], nodes[1]
            joins.append((da, db))
            nodes = [((ta, tb), da * db)] + nodes[2:]
    else:
        raise ValueError(f"unknown join-tree shape {shape!r}")
    return ChainPlan(len(joins), nodes[0][0], tuple(joins))


def dim_check_tensor(m, n):
    """Real dimension of u(mn)."""
    return (m * n) ** 2
