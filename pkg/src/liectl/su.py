"""Root structure of su(n) and two-element generating pairs.

Conventions
-----------
For a traceless skew-Hermitian ``A`` with eigenvalues ``lambda_j`` (purely
imaginary) the roots are ``alpha_pq = lambda_p - lambda_q``. Writing
``alpha_pq = 1j * a_pq`` with ``a_pq`` real, the real basis

    h_k  = 1j * (E_kk - E_{k+1,k+1})
    U_pq = E_pq - E_qp
    V_pq = 1j * (E_pq + E_qp)            (p < q)

satisfies, for diagonal ``A``::

    [A, U_pq] =  a_pq * V_pq
    [A, V_pq] = -a_pq * U_pq
    [U_{p,p+1}, V_{p,p+1}] = 2 * h_p

The ``h_k`` are the simple-coroot Cartan elements and are not mutually
orthogonal for n >= 3; every U and V is orthogonal to everything else.
"""
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import PreconditionError
from .lie import lie_closure_of
from .linalg import as_matrix, commutator, from_real_vector, to_real_vector

__all__ = [
    "RootData",
    "CouplingGraph",
    "PairVerdict",
    "root_data",
    "is_regular",
    "is_strongly_regular",
    "coupling_graph",
    "pair_verdict",
    "weyl_real_basis",
    "weyl_elements",
    "canonical_generator_pair",
    "kuranishi_span_rank",
]


def _check_su(A, name="A", tol=1e-9):
    A = as_matrix(A, name)
    scale = max(np.linalg.norm(A), 1.0)
    if np.linalg.norm(A + A.conj().T) > 1e-10 * scale:
        raise ValueError(f"{name} must be skew-Hermitian")
    if abs(np.trace(A)) > tol * scale:
        raise ValueError(f"{name} must be traceless")
    return A


def _fix_phases(V):
    # largest-magnitude component of each column made real positive
    idx = np.argmax(np.abs(V), axis=0)
    ph = V[idx, np.arange(V.shape[1])]
    return V * (np.abs(ph) / ph)


@dataclass(frozen=True)
class RootData:
    eigenvalues: np.ndarray
    diagonalizer: np.ndarray

    @property
    def n(self):
        return len(self.eigenvalues)

    @property
    def roots(self):
        lam = self.eigenvalues
        return {(p, q): lam[p] - lam[q] for p in range(self.n) for q in range(self.n) if p != q}

    def root(self, p, q):
        """Root alpha_pq with 1-based indices."""
        return self.eigenvalues[p - 1] - self.eigenvalues[q - 1]


def root_data(A):
    """Eigenvalues, all n(n-1) roots and a diagonalizing unitary of ``A``.

    A diagonal ``A`` keeps its own ordering with the identity as diagonalizer.
    Otherwise eigenvalues are sorted by imaginary part ascending and each
    eigenvector is phase-fixed so its largest component is real positive.
    """
    A = _check_su(A)
    n = A.shape[0]
    off = A - np.diag(np.diag(A))
    if np.linalg.norm(off) <= 1e-14 * max(np.linalg.norm(A), 1.0):
        return RootData(1j * np.imag(np.diag(A)), np.eye(n, dtype=complex))
    w, V = np.linalg.eigh(-1j * A)
    return RootData(1j * w, _fix_phases(V))


def _default_tol(rd):
    return 1e-8 * float(np.max(np.abs(rd.eigenvalues)))


def is_regular(A, tol=None):
    rd = root_data(A)
    if tol is None:
        tol = _default_tol(rd)
    lam = rd.eigenvalues
    gaps = [abs(lam[p] - lam[q]) for p in range(rd.n) for q in range(p + 1, rd.n)]
    return bool(min(gaps, default=np.inf) > tol)


def is_strongly_regular(A, tol=None):
    rd = root_data(A)
    if tol is None:
        tol = _default_tol(rd)
    roots = np.array(sorted(rd.roots.values(), key=lambda z: z.imag))
    if len(roots) < 2:
        return False
    if np.min(np.abs(roots)) <= tol:
        return False
    return bool(np.min(np.abs(np.diff(roots))) > tol)


@dataclass(frozen=True)
class CouplingGraph:
    """Undirected graph on nodes 1..n; ``edges`` holds pairs (p, q) with p < q."""

    n: int
    edges: frozenset

    def adjacency(self):
        M = np.zeros((self.n, self.n), dtype=int)
        for p, q in self.edges:
            M[p - 1, q - 1] = M[q - 1, p - 1] = 1
        return M

    def components(self):
        _, labels = connected_components(csr_matrix(self.adjacency()), directed=False)
        groups = {}
        for node, lab in enumerate(labels, start=1):
            groups.setdefault(int(lab), []).append(node)
        return sorted(groups.values())

    def is_connected(self):
        return len(self.components()) == 1

    def isolated_nodes(self):
        touched = {v for e in self.edges for v in e}
        return [v for v in range(1, self.n + 1) if v not in touched]


def coupling_graph(A, B, edge_tol=None):
    """Graph on the eigenstates of ``A`` joined where ``B`` couples them."""
    rd = root_data(A)
    if not is_regular(A):
        raise PreconditionError("A is not regular: its eigenbasis, and so the coupling graph, is ambiguous")
    B = as_matrix(B, "B")
    if B.shape != (rd.n, rd.n):
        raise ValueError("A and B must have the same dimension")
    if edge_tol is None:
        edge_tol = 1e-10 * np.linalg.norm(B)
    V = rd.diagonalizer
    Bp = V.conj().T @ B @ V
    edges = frozenset(
        (p + 1, q + 1) for p in range(rd.n) for q in range(p + 1, rd.n) if abs(Bp[p, q]) > edge_tol
    )
    return CouplingGraph(rd.n, edges)


@dataclass(frozen=True)
class PairVerdict:
    kind: str
    graph: CouplingGraph
    strongly_regular: bool
    dim: int | None = None

    def __str__(self):
        if self.kind == "inconclusive_then_closure":
            return f"inconclusive_then_closure({self.dim})"
        return self.kind


def pair_verdict(A, B, tol=1e-9):
    """Apply the graph necessary condition and the strong-regularity sufficient one.

    When the graph is connected but ``A`` is only regular, neither criterion
    decides, and the closure of ``{A, B}`` is computed instead.
    """
    A = _check_su(A)
    B = _check_su(B, "B")
    graph = coupling_graph(A, B)
    strong = is_strongly_regular(A)
    if not graph.is_connected():
        return PairVerdict("fails_necessary", graph, strong)
    if strong:
        return PairVerdict("sufficient_generates", graph, strong)
    dim = lie_closure_of([A, B], tol=tol).dim_algebra
    return PairVerdict("inconclusive_then_closure", graph, strong, dim)


def weyl_elements(n):
    """The real basis split by kind: ``(h, U, V)`` with ``U``/``V`` keyed by 1-based (p, q)."""
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    h = []
    for k in range(n - 1):
        M = np.zeros((n, n), dtype=complex)
        M[k, k], M[k + 1, k + 1] = 1j, -1j
        h.append(M)
    U, V = {}, {}
    for p in range(n):
        for q in range(p + 1, n):
            u = np.zeros((n, n), dtype=complex)
            u[p, q], u[q, p] = 1, -1
            v = np.zeros((n, n), dtype=complex)
            v[p, q] = v[q, p] = 1j
            U[(p + 1, q + 1)] = u
            V[(p + 1, q + 1)] = v
    return h, U, V


def weyl_real_basis(n):
    """n^2 - 1 matrices spanning su(n): the h_k, then U_pq, V_pq for p < q."""
    h, U, V = weyl_elements(n)
    out = list(h)
    for key in U:
        out.append(U[key])
        out.append(V[key])
    return out


def canonical_generator_pair(n):
    """A strongly regular diagonal ``A`` and a path-coupling ``B`` generating su(n).

    ``A = i diag(c - mean(c))`` with ``c_j = 2**(j-1)``: differences of distinct
    powers of two are all distinct, so every root is distinct.
    ``B = sum_p U_{p,p+1}`` couples consecutive levels.
    """
    _, U, _ = weyl_elements(n)
    c = 2.0 ** np.arange(n)
    A = np.diag(1j * (c - c.mean()))
    B = sum(U[(p, p + 1)] for p in range(1, n))
    return A, B


def kuranishi_span_rank(h, e=None, tol=1e-9):
    """Dimension of the real span of ``e, [h,e], [h,[h,e]], ...``.

    ``h`` must be diagonal. The default ``e`` touches every root space,
    ``sum_{p<q} (U_pq + V_pq)``; with strongly regular ``h`` the iterates then
    span the whole off-diagonal part, of real dimension n(n-1).

    The raw powers form an ill-conditioned Vandermonde system, so the same
    Krylov space is built Arnoldi-style: each new direction is ``ad_h`` of the
    last orthonormal one, orthogonalized against all previous ones.
    """
    h = _check_su(h, "h")
    n = h.shape[0]
    if np.any(h - np.diag(np.diag(h))):
        raise ValueError("h must be diagonal")
    if e is None:
        _, U, V = weyl_elements(n)
        e = sum(U[k] + V[k] for k in U)
    e = np.asarray(e, dtype=complex)
    if not np.any(e):
        return 0
    d = np.imag(np.diag(h))
    ad_norm = float(np.max(np.abs(d[:, None] - d[None, :]))) or 1.0
    Q = [to_real_vector(e / np.linalg.norm(e))]
    while len(Q) < 2 * n * n:
        w = to_real_vector(commutator(h, from_real_vector(Q[-1], n)))
        for _ in range(2):
            for q in Q:
                w = w - (q @ w) * q
        nrm = np.sqrt(w @ w)
        if nrm <= tol * ad_norm:
            break
        Q.append(w / nrm)
    return len(Q)
