"""Discrete mixed classical states and their spectra.

A discrete state is a finite weighted sum of point masses. Hamiltonian flows
can move the support points anywhere (keeping them distinct) but never change
a weight, and on a connected symplectic manifold any relabelling of points is
realizable. So two states are equivalent exactly when their multisets of
weights agree, and the equivalence is witnessed by pairing atoms in order of
increasing weight.
"""
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from .errors import PreconditionError

__all__ = [
    "DiscreteState",
    "StateSpectrum",
    "spectrum",
    "equivalent",
    "transport_witness",
    "state_from_json",
    "state_to_json",
    "FLOAT_TOL",
]

FLOAT_TOL = 1e-10
_SUM_TOL = 1e-12


def _exact(w):
    return isinstance(w, Rational)


@dataclass(frozen=True)
class DiscreteState:
    atoms: tuple

    def __post_init__(self):
        atoms = tuple((label, w) for label, w in self.atoms)
        if not atoms:
            raise ValueError("a discrete state needs at least one atom")
        labels = [label for label, _ in atoms]
        if len(set(labels)) != len(labels):
            raise ValueError("atom labels must be distinct")
        for label, w in atoms:
            if isinstance(w, bool) or not isinstance(w, Real):
                raise ValueError(f"weight of {label!r} must be a real number")
            if not w > 0:
                raise ValueError(f"weight of {label!r} must be positive, got {w}")
        total = sum(w for _, w in atoms)
        if all(_exact(w) for _, w in atoms):
            if total != 1:
                raise ValueError(f"weights must sum to 1, got {total}")
        elif abs(total - 1) > _SUM_TOL:
            raise ValueError(f"weights must sum to 1 (tol {_SUM_TOL}), got {total!r}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def exact(self):
        return all(_exact(w) for _, w in self.atoms)

    def weights(self):
        return [w for _, w in self.atoms]


@dataclass(frozen=True)
class StateSpectrum:
    """``(weight, multiplicity)`` pairs with weights strictly decreasing."""

    pairs: tuple
    exact: bool = True

    def __eq__(self, other):
        if not isinstance(other, StateSpectrum):
            return NotImplemented
        if len(self.pairs) != len(other.pairs):
            return False
        tol = 0 if (self.exact and other.exact) else FLOAT_TOL
        return all(m1 == m2 and abs(c1 - c2) <= tol
                   for (c1, m1), (c2, m2) in zip(self.pairs, other.pairs))

    __hash__ = None


def spectrum(rho):
    ws = sorted(rho.weights(), reverse=True)
    tol = 0 if rho.exact else FLOAT_TOL
    pairs = []
    for w in ws:
        if pairs and pairs[-1][0] - w <= tol:
            pairs[-1] = (pairs[-1][0], pairs[-1][1] + 1)
        else:
            pairs.append((w, 1))
    return StateSpectrum(tuple(pairs), rho.exact)


def equivalent(rho1, rho2):
    return spectrum(rho1) == spectrum(rho2)


def _label_key(label):
    return (type(label).__name__, label) if isinstance(label, (int, float, str)) else ("~", repr(label))


def _ordered(rho):
    return sorted(rho.atoms, key=lambda a: (a[1], _label_key(a[0])))


def transport_witness(rho1, rho2):
    """Weight-preserving bijection of atom labels ``{x_i: y_i}``.

    Atoms are paired after sorting by ascending weight, ties broken by label.
    """
    if not equivalent(rho1, rho2):
        raise PreconditionError("states have different spectra, so no weight-preserving transport exists")
    return {x: y for (x, _), (y, _) in zip(_ordered(rho1), _ordered(rho2))}


def _parse_weight(w):
    if isinstance(w, str):
        try:
            return Fraction(w)
        except ValueError:
            raise ValueError(f"bad weight {w!r}") from None
    if isinstance(w, bool) or not isinstance(w, (int, float)):
        raise ValueError(f"bad weight {w!r}")
    return w


def state_from_json(obj):
    """Parse ``{"atoms": [["label", w], ...]}``; weights may be ``"p/q"`` strings."""
    if not isinstance(obj, dict) or not isinstance(obj.get("atoms"), list):
        raise ValueError('state file must be an object with an "atoms" list')
    atoms = []
    for k, atom in enumerate(obj["atoms"]):
        if not (isinstance(atom, list) and len(atom) == 2 and isinstance(atom[0], str)):
            raise ValueError(f"atom {k} must be [label, weight], got {atom!r}")
        atoms.append((atom[0], _parse_weight(atom[1])))
    return DiscreteState(tuple(atoms))


def _fmt(w):
    if isinstance(w, Fraction):
        return w.numerator if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
    return w


def state_to_json(rho):
    return {"atoms": [[label, _fmt(w)] for label, w in rho.atoms]}
