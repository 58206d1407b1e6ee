import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_skew
from liectl.io import InputError, Report, matrix_from_json, matrix_to_json, system_from_json, system_to_json
from liectl.lie import GeneratorSystem


@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_matrix_roundtrip_is_bit_exact(n, seed):
    M = random_skew(np.random.default_rng(seed), n) * 1e3
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(M))))
    assert np.array_equal(back, M)


def test_system_roundtrip(rng):
    sys = GeneratorSystem.from_matrices([random_skew(rng, 3, True) for _ in range(2)], "SU(3)", ["p", "q"])
    back = system_from_json(json.loads(json.dumps(system_to_json(sys))))
    assert back.names == ["p", "q"] and back.ambient == "SU(n)"
    assert all(np.array_equal(a, b) for a, b in zip(back.matrices, sys.matrices))


def test_system_pair_form():
    rows = [[[0, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert system_from_json({"n": 2, "generators": [["x", rows]]}).names == ["x"]


@pytest.mark.parametrize("rows", [[], [[[0, 0]]] * 2, [[[0, "a"]]], [[[True, 0]]]])
def test_matrix_errors(rows):
    with pytest.raises(InputError):
        matrix_from_json(rows)


def test_report_numpy_values():
    r = Report("x", "d", verdicts={"ok": np.bool_(True)}, dimensions={"n": np.int64(3)}, margins={"m": np.float64(0.5)})
    assert r.verdicts == {"ok": True} and type(r.dimensions["n"]) is int
    assert Report.from_json(r.to_json()) == r
    with pytest.raises(ValueError):
        Report("x", "d", margins={"m": float("nan")})
