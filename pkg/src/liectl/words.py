"""Reduced words of timed generator indices and their group operations.

A word is a sequence of ``(duration, name)`` terms. Reduction drops terms of
zero duration and merges neighbours that share a name; the reduced words form
a group under concatenate-then-reduce, with the empty word as identity.

Durations are kept exactly as given (int, float or ``Fraction``). Group laws
are exact for integer and rational durations; for floats they hold up to the
non-associativity of IEEE addition.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

__all__ = ["ControlWord", "reduce", "product", "inverse", "scalar", "classify", "word_from_json", "word_to_json"]


def _check_duration(t):
    if isinstance(t, bool) or not isinstance(t, Real):
        raise TypeError(f"duration must be a real number, got {t!r}")
    if not math.isfinite(t):
        raise ValueError(f"duration must be finite, got {t!r}")
    return t


def _reduce_terms(terms):
    stack = []
    for t, name in terms:
        _check_duration(t)
        if t == 0:
            continue
        if stack and stack[-1][1] == name:
            merged = stack[-1][0] + t
            if merged == 0:
                stack.pop()
            else:
                stack[-1] = (merged, name)
        else:
            stack.append((t, name))
    return tuple(stack)


@dataclass(frozen=True)
class ControlWord:
    """An irreducible word; build through :func:`reduce` or the constructor."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _reduce_terms(tuple((t, str(i)) for t, i in self.terms)))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __mul__(self, other):
        return product(self, other)

    def __invert__(self):
        return inverse(self)

    def names(self):
        return {name for _, name in self.terms}

    def total_time(self):
        return sum(t for t, _ in self.terms)


def reduce(raw):
    """Reduce a raw sequence of ``(duration, name)`` pairs to its irreducible word."""
    return ControlWord(tuple(raw))


def product(s1, s2):
    return ControlWord(s1.terms + s2.terms)


def inverse(s):
    return ControlWord(tuple((-t, name) for t, name in reversed(s.terms)))


def scalar(lam, s):
    _check_duration(lam)
    return ControlWord(tuple((lam * t, name) for t, name in s.terms))


def classify(s):
    """One of ``"neutral"``, ``"positive"``, ``"negative"`` or ``"mixed"``."""
    if not s.terms:
        return "neutral"
    if all(t > 0 for t, _ in s.terms):
        return "positive"
    if all(t < 0 for t, _ in s.terms):
        return "negative"
    return "mixed"


def _parse_duration(value):
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise ValueError(f"bad duration {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"bad duration {value!r}")
    return value


def _format_duration(t):
    if isinstance(t, Fraction):
        return t.numerator if t.denominator == 1 else f"{t.numerator}/{t.denominator}"
    return t


def word_from_json(terms):
    """Parse ``[[t, "name"], ...]``; durations may be numbers or ``"p/q"`` strings."""
    if not isinstance(terms, list):
        raise ValueError("word must be a list of [duration, name] pairs")
    raw = []
    for k, term in enumerate(terms):
        if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], str)):
            raise ValueError(f"word term {k} must be [duration, name], got {term!r}")
        raw.append((_parse_duration(term[0]), term[1]))
    return reduce(raw)


def word_to_json(s):
    return [[_format_duration(t), name] for t, name in s.terms]
