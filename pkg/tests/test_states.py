from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liectl.errors import PreconditionError
from liectl.states import (
    DiscreteState,
    equivalent,
    spectrum,
    state_from_json,
    state_to_json,
    transport_witness,
)


def S(**kw):
    return DiscreteState(tuple(kw.items()))


def test_spectrum_examples():
    assert spectrum(S(x=F(1, 2), y=F(1, 2))).pairs == ((F(1, 2), 2),)
    assert spectrum(S(a=F(1, 5), b=F(1, 5), c=F(3, 5))).pairs == ((F(3, 5), 1), (F(1, 5), 2))
    assert spectrum(S(a=0.2, b=0.2, c=0.6)) == spectrum(S(p=0.6, q=0.2, r=0.2))


def test_equivalence_examples():
    assert equivalent(S(x=0.5, y=0.5), S(u=0.5, v=0.5))
    assert not equivalent(S(x=0.3, y=0.7), S(u=0.5, v=0.5))
    r = S(a=F(1, 3), b=F(2, 3))
    assert equivalent(r, r)


def test_witness_examples():
    assert transport_witness(S(x=1), S(y=1)) == {"x": "y"}
    w = transport_witness(S(x1=F(1, 2), x2=F(1, 2)), S(y1=F(1, 2), y2=F(1, 2)))
    assert w == {"x1": "y1", "x2": "y2"}
    with pytest.raises(PreconditionError):
        transport_witness(S(x=0.3, y=0.7), S(u=0.5, v=0.5))


def test_float_tolerance():
    assert equivalent(S(a=0.1 + 0.2, b=0.7), S(c=0.3, d=0.7))


@pytest.mark.parametrize("atoms", [(), (("a", 0.5), ("a", 0.5)), (("a", -0.5), ("b", 1.5)), (("a", F(1, 3)),),
                                   (("a", 0.5), ("b", 0.4))])
def test_state_validation(atoms):
    with pytest.raises(ValueError):
        DiscreteState(atoms)


weights = st.lists(st.integers(1, 9), min_size=1, max_size=6).map(lambda ws: [F(w, sum(ws)) for w in ws])


@settings(max_examples=200)
@given(weights, st.randoms())
def test_relabel_and_permute_preserve_equivalence(ws, rnd):
    a = DiscreteState(tuple((f"x{i}", w) for i, w in enumerate(ws)))
    perm = list(ws)
    rnd.shuffle(perm)
    b = DiscreteState(tuple((f"y{i}", w) for i, w in enumerate(perm)))
    assert equivalent(a, b)
    wit = transport_witness(a, b)
    wa, wb = dict(a.atoms), dict(b.atoms)
    assert sorted(wit) == sorted(wa) and sorted(wit.values()) == sorted(wb)
    assert all(wa[x] == wb[y] for x, y in wit.items())


def test_json_roundtrip():
    r = S(a=F(1, 3), b=F(2, 3))
    assert state_from_json(state_to_json(r)) == r
    assert state_from_json({"atoms": [["a", "1/4"], ["b", 0.75]]}).atoms == (("a", F(1, 4)), ("b", 0.75))
    for bad in ({}, {"atoms": [["a"]]}, {"atoms": [[1, 1]]}, {"atoms": [["a", "x"]]}):
        with pytest.raises(ValueError):
            state_from_json(bad)
