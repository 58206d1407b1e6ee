import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_skew, random_unitary
from oracles import bracket_expansion_dim, span_rank
from liectl.errors import PreconditionError
from liectl.lie import lie_closure_of
from liectl.linalg import PAULI_X
from liectl.su import (
    canonical_generator_pair,
    coupling_graph,
    is_regular,
    is_strongly_regular,
    kuranishi_span_rank,
    pair_verdict,
    root_data,
    weyl_elements,
    weyl_real_basis,
)


def idiag(*d):
    return np.diag(1j * np.array(d, dtype=float))


def test_roots_two_level():
    rd = root_data(idiag(1, -1))
    assert rd.root(1, 2) == 2j and rd.root(2, 1) == -2j
    assert len(rd.roots) == 2


def test_roots_three_level():
    rd = root_data(idiag(1, 0, -1))
    assert rd.root(1, 2) == rd.root(2, 3) == 1j
    assert sorted(np.imag(list(rd.roots.values()))) == [-2, -1, -1, 1, 1, 2]


def test_roots_of_zero():
    assert all(r == 0 for r in root_data(np.zeros((3, 3))).roots.values())


def test_root_data_non_diagonal(rng):
    A = random_skew(rng, 4, traceless=True)
    rd = root_data(A)
    V = rd.diagonalizer
    assert np.allclose(V.conj().T @ V, np.eye(4), atol=1e-12)
    assert np.allclose(V.conj().T @ A @ V, np.diag(rd.eigenvalues), atol=1e-12)
    assert np.all(np.diff(np.imag(rd.eigenvalues)) > 0)


def test_root_data_rejects_trace():
    with pytest.raises(ValueError):
        root_data(1j * np.eye(2))


@pytest.mark.parametrize("d, reg, strong", [
    ((1, -1), True, True),
    ((1, 1, -2), False, False),
    ((2, 1, -3), True, True),
    ((1, 0, -1), True, False),
    ((3, 1, -4), True, True),
])
def test_regularity_examples(d, reg, strong):
    A = idiag(*d)
    assert is_regular(A) is reg
    # strong regularity by enumerating all roots independently
    lam = np.array(d, dtype=float)
    roots = [lam[p] - lam[q] for p in range(len(d)) for q in range(len(d)) if p != q]
    expect = len(set(np.round(roots, 9))) == len(roots) and 0 not in roots
    assert is_strongly_regular(A) is expect


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_strongly_regular_implies_regular(n, seed):
    A = random_skew(np.random.default_rng(seed), n, traceless=True)
    if is_strongly_regular(A):
        assert is_regular(A)


@pytest.mark.parametrize("n", range(2, 7))
def test_commutation_relations(n):
    h, U, V = weyl_elements(n)
    A = idiag(*np.random.default_rng(n).standard_normal(n))
    A = A - np.trace(A) / n * np.eye(n)
    rd = root_data(A)
    for (p, q), u in U.items():
        a = (rd.root(p, q) / 1j).real
        v = V[(p, q)]
        assert np.linalg.norm(A @ u - u @ A - a * v) <= 1e-9
        assert np.linalg.norm(A @ v - v @ A + a * u) <= 1e-9
    for p in range(1, n):
        u, v = U[(p, p + 1)], V[(p, p + 1)]
        assert np.linalg.norm(u @ v - v @ u - 2 * h[p - 1]) <= 1e-9


@pytest.mark.parametrize("n", range(2, 7))
def test_weyl_basis_spans(n):
    B = weyl_real_basis(n)
    assert len(B) == n * n - 1
    assert span_rank(B) == n * n - 1
    for X in B:
        assert np.allclose(X, -X.conj().T) and abs(np.trace(X)) < 1e-14
    # every U/V (all entries after the n-1 Cartan elements) is orthogonal to the rest
    for i in range(n - 1, len(B)):
        for j in range(len(B)):
            if i != j:
                assert abs(np.real(np.trace(B[i].conj().T @ B[j]))) < 1e-14


def test_weyl_n2_is_paulis():
    h, U, V = weyl_elements(2)
    assert np.allclose(h[0], idiag(1, -1))
    assert np.allclose(V[(1, 2)], 1j * PAULI_X)


def test_weyl_rejects_small_n():
    with pytest.raises(ValueError):
        weyl_elements(1)


def test_coupling_graph_examples():
    g = coupling_graph(idiag(1, -1), 1j * PAULI_X)
    assert g.edges == {(1, 2)} and g.is_connected()
    assert coupling_graph(idiag(1, -1), idiag(1, -1)).edges == frozenset()
    B = np.zeros((3, 3), dtype=complex)
    B[0, 1], B[1, 0] = 1, -1
    g = coupling_graph(idiag(2, 1, -3), B)
    assert g.isolated_nodes() == [3]
    assert g.components() == [[1, 2], [3]]


def test_coupling_graph_needs_regular_A():
    with pytest.raises(PreconditionError):
        coupling_graph(idiag(1, 1, -2), np.zeros((3, 3)))


def test_coupling_graph_basis_independent(rng):
    # conjugating A and B together leaves the graph unchanged
    A, B = canonical_generator_pair(4)
    g = random_unitary(rng, 4)
    assert coupling_graph(g @ A @ g.conj().T, g @ B @ g.conj().T, edge_tol=1e-8).edges == coupling_graph(A, B).edges


def test_pair_verdict_examples():
    assert pair_verdict(idiag(1, -1), 1j * PAULI_X).kind == "sufficient_generates"
    B = np.zeros((3, 3), dtype=complex)
    B[0, 1], B[1, 0] = 1, -1
    assert pair_verdict(idiag(2, 1, -3), B).kind == "fails_necessary"
    h, U, V = weyl_elements(3)
    Bfull = sum(U.values()) + sum(V.values())
    v = pair_verdict(idiag(1, 0, -1), Bfull)
    assert v.kind == "inconclusive_then_closure" and v.dim == 8
    assert str(v) == "inconclusive_then_closure(8)"
    assert v.dim == bracket_expansion_dim([idiag(1, 0, -1), Bfull])


@pytest.mark.parametrize("n", range(2, 7))
def test_canonical_pair(n):
    A, B = canonical_generator_pair(n)
    assert is_strongly_regular(A)
    assert coupling_graph(A, B).is_connected()
    assert pair_verdict(A, B).kind == "sufficient_generates"
    assert lie_closure_of([A, B]).dim_algebra == n * n - 1


@pytest.mark.parametrize("n", range(2, 9))
def test_kuranishi_all_roots(n):
    A, _ = canonical_generator_pair(n)
    assert kuranishi_span_rank(A) == n * (n - 1)


@pytest.mark.parametrize("n", range(3, 7))
def test_kuranishi_fundamental_roots_only(n):
    A, _ = canonical_generator_pair(n)
    h, U, V = weyl_elements(n)
    e = sum(U[(p, p + 1)] + V[(p, p + 1)] for p in range(1, n))
    assert kuranishi_span_rank(A, e) == 2 * (n - 1)


def test_kuranishi_degenerate_h_loses_rank():
    # alpha12 = alpha23 merges two root spaces under ad_h
    assert kuranishi_span_rank(idiag(1, 0, -1)) < 6


def test_kuranishi_needs_diagonal(rng):
    with pytest.raises(ValueError):
        kuranishi_span_rank(random_skew(rng, 3, traceless=True))
