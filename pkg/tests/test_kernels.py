"""The compiled and numpy kernels must agree on every input."""
import numpy as np
import pytest

from conftest import random_skew
from liectl import _backend
from liectl._backend import available_backends
from liectl.linalg import to_real_vector

BACKENDS = available_backends()


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert _backend.BACKEND in BACKENDS


def test_env_var_forces_python(monkeypatch):
    import importlib

    monkeypatch.setenv("LIECTL_PURE_PYTHON", "1")
    mod = importlib.reload(_backend)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("LIECTL_PURE_PYTHON")
        importlib.reload(_backend)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_orthonormalize_contract(name, rng):
    k = BACKENDS[name]
    a, b = rng.standard_normal(8), rng.standard_normal(8)
    V = np.stack([a, b, a + 2 * b, rng.standard_normal(8)])
    Q, kept = k.orthonormalize(V, 1e-9)
    assert Q.shape == (3, 8)
    assert list(kept) == [0, 1, 3]
    assert np.allclose(Q @ Q.T, np.eye(3), atol=1e-13)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_saturate_parity(n, rng):
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    gens = [random_skew(rng, n, traceless=True) for _ in range(2)]
    V = np.stack([to_real_vector(g) for g in gens])
    results = {}
    for name, k in BACKENDS.items():
        Q0, _ = k.orthonormalize(V, 1e-9)
        Q = np.zeros((n * n - 1, 2 * n * n))
        Q[: len(Q0)] = Q0
        count, sweeps = k.saturate(Q, len(Q0), n, 1e-9, n * n)
        results[name] = (count, Q[:count])
    (c1, Q1), (c2, Q2) = results.values()
    assert c1 == c2 == n * n - 1
    # same span: projectors agree
    assert np.linalg.norm(Q1.T @ Q1 - Q2.T @ Q2) < 1e-8


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_saturate_sweep_limit(name):
    k = BACKENDS[name]
    n = 3
    gens = [np.diag([1j, -1j, 0]), np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], dtype=complex)]
    V = np.stack([to_real_vector(g) for g in gens])
    Q0, _ = k.orthonormalize(V, 1e-9)
    Q = np.zeros((8, 18))
    Q[:2] = Q0
    with pytest.raises(RuntimeError):
        k.saturate(Q, 2, n, 1e-9, 0)


@pytest.mark.parametrize("n", [4, 6])
def test_saturate_parity_proper_subalgebra(n, rng):
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    # real antisymmetric generators close on so(n), well below the cap
    gens = []
    for _ in range(2):
        M = rng.standard_normal((n, n))
        gens.append((M - M.T).astype(complex))
    V = np.stack([to_real_vector(g) for g in gens])
    spans = []
    for k in BACKENDS.values():
        Q0, _ = k.orthonormalize(V, 1e-9)
        Q = np.zeros((n * n - 1, 2 * n * n))
        Q[:2] = Q0
        count, _ = k.saturate(Q, 2, n, 1e-9, n * n)
        assert count == n * (n - 1) // 2
        spans.append(Q[:count].T @ Q[:count])
    assert np.linalg.norm(spans[0] - spans[1]) < 1e-8


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled backend not built")
def test_compiled_saturate_rejects_strided_rows():
    Q = np.zeros((4, 16))[:, :8]
    with pytest.raises(ValueError):
        BACKENDS["cython"].saturate(Q, 1, 2, 1e-9, 4)
