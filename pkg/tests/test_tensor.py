import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_skew
from oracles import bracket_expansion_dim, span_rank
from liectl.errors import PreconditionError
from liectl.lie import contains
from liectl.linalg import PAULI_Z
from liectl.tensor import (
    MAX_VERIFIED_DIM,
    TensorFactorization,
    chain_plan,
    complement_basis,
    dim_check_tensor,
    kron_sum_embed,
    minimal_extension,
    product_subalgebra,
    unitary_algebra_basis,
)


def test_kron_sum_zero():
    assert not np.any(kron_sum_embed(np.zeros((2, 2)), np.zeros((3, 3))))


def test_kron_sum_is_exponential_of_tensor(rng):
    from liectl.linalg import expm

    a, b = random_skew(rng, 2), random_skew(rng, 3)
    assert np.allclose(expm(kron_sum_embed(a, b)), np.kron(expm(a), expm(b)), atol=1e-12)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (2, 4)])
def test_product_subalgebra_dim(m, n):
    L = product_subalgebra(m, n)
    assert L.dim_algebra == m * m + n * n - 1
    oracle = [np.kron(a, np.eye(n)) for a in unitary_algebra_basis(m)]
    oracle += [np.kron(np.eye(m), b) for b in unitary_algebra_basis(n)]
    assert span_rank(oracle) == L.dim_algebra
    assert L.closure_defect() < 1e-9


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3)])
def test_complement_is_orthogonal_to_L(m, n):
    L = product_subalgebra(m, n)
    comp = complement_basis(m, n)
    assert span_rank(comp) == (m * m - 1) * (n * n - 1)
    for X in comp:
        assert np.linalg.norm(L.projection(X)) < 1e-12


def test_extension_examples(backend):
    r = minimal_extension(2, 2, 1j * np.kron(PAULI_Z, PAULI_Z))
    assert r.verified and r.dim == 16
    r = minimal_extension(2, 3)
    assert r.verified and r.dim == 36
    with pytest.raises(PreconditionError):
        minimal_extension(2, 2, 1j * np.kron(PAULI_Z, np.eye(2)))


def test_extension_matches_oracle():
    L = product_subalgebra(2, 2)
    X = 1j * np.kron(PAULI_Z, PAULI_Z)
    assert bracket_expansion_dim(list(L.basis) + [X]) == 16


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_candidate_outside_L_extends(seed):
    rng = np.random.default_rng(seed)
    X = random_skew(rng, 4)
    if contains(product_subalgebra(2, 2), X, 1e-8):
        return
    assert minimal_extension(2, 2, X).dim == 16


def test_extension_large_is_unverified():
    r = minimal_extension(3, 3)
    assert 9 > MAX_VERIFIED_DIM
    assert not r.verified and r.dim is None and r.note == "unverified (size)"
    assert r.target_dim == 81


def test_extension_bad_candidate():
    with pytest.raises(ValueError):
        minimal_extension(2, 2, np.eye(3))
    with pytest.raises(ValueError):
        minimal_extension(2, 2, np.eye(4))


@pytest.mark.parametrize("dims,count", [((2, 2, 2, 2, 2), 4), ((5,), 0), ((2, 3), 1), ((2, 3, 4), 2)])
def test_chain_plan_counts(dims, count):
    for shape in ("balanced", "left"):
        assert chain_plan(dims, shape).extension_count == count


def test_chain_plan_tree():
    plan = chain_plan((2, 2, 2, 2, 2))
    assert plan.join_tree == (((0, 1), (2, 3)), 4)
    assert plan.joins == ((2, 2), (2, 2), (4, 4), (16, 2))
    left = chain_plan((2, 3, 4), "left")
    assert left.join_tree == ((0, 1), 2) and left.joins == ((2, 3), (6, 4))
    assert plan.as_json()["join_tree"] == [[[0, 1], [2, 3]], 4]


def test_chain_plan_validation():
    with pytest.raises(ValueError):
        chain_plan(())
    with pytest.raises(ValueError):
        chain_plan((2, 1))
    with pytest.raises(ValueError):
        chain_plan((2, 2), "zigzag")
    assert TensorFactorization((2, 3, 4)).total == 24


@pytest.mark.parametrize("m,n,d", [(2, 2, 16), (2, 3, 36), (3, 3, 81)])
def test_dim_check(m, n, d):
    assert dim_check_tensor(m, n) == d
