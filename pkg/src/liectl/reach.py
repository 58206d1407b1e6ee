"""Bang-bang schedules as unitary products, local rank of the exponential
product map, and dense-orbit gates built from periodic generators."""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .linalg import as_matrix, expm, is_skew_hermitian, real_span_rank
from .words import ControlWord, classify

__all__ = [
    "Schedule",
    "GateSet",
    "evaluate",
    "local_rank_F",
    "detect_period",
    "dense_gate",
    "eigenphase_coverage_gap",
    "power_cycle_length",
    "torus_generators",
    "build_gate_set",
    "GOLDEN",
]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Schedule:
    word: ControlWord
    system: object

    def __post_init__(self):
        unknown = self.word.names() - set(self.system.names)
        if unknown:
            raise ValueError(f"schedule uses unknown generators: {sorted(unknown)}")

    @property
    def is_bang_bang_positive(self):
        """Reachable-set semantics need non-negative durations only."""
        return classify(self.word) in ("positive", "neutral")


def evaluate(s):
    """``exp(t_1 X_1) exp(t_2 X_2) ... exp(t_k X_k)`` for the word's terms in order.

    With this ordering evaluation is a homomorphism: the value of a product of
    words is the product of their values.
    """
    n = s.system.n
    U = np.eye(n, dtype=complex)
    for t, name in s.word.terms:
        U = U @ expm(float(t) * s.system[name])
    return U


def _product_map(mats, ts):
    U = np.eye(mats[0].shape[0], dtype=complex)
    for t, X in zip(ts, mats):
        U = U @ expm(t * X)
    return U


def _rank_at(mats, base, h, tol):
    base = np.asarray(base, dtype=float)
    F0_inv = _product_map(mats, base).conj().T
    cols = []
    for i in range(len(mats)):
        step = np.zeros_like(base)
        step[i] = h
        if base[i] + h == base[i] or base[i] - h == base[i]:
            raise ValueError(f"finite-difference step {h} underflows at duration {base[i]}")
        D = (_product_map(mats, base + step) - _product_map(mats, base - step)) / (2 * h)
        cols.append(D @ F0_inv)
    return real_span_rank(cols, tol)[0]


def local_rank_F(sys, base_point=None, h=1e-5, tol=1e-9, retries=3, seed=0):
    """Numerical rank of the differential of ``F(t) = prod_i exp(t_i X_i)``.

    Columns are right-translated central differences ``(dF/dt_i) F^{-1}``.
    Without ``base_point`` the map is probed at ``(0.1, ..., 0.1)`` and, if
    that is rank-deficient, at up to ``retries`` perturbed points; the largest
    rank seen is returned.
    """
    mats = sys.matrices
    if h <= 0:
        raise ValueError("step size must be positive")
    if base_point is not None:
        if len(base_point) != len(mats):
            raise ValueError("base_point needs one duration per generator")
        if not np.all(np.isfinite(base_point)):
            raise ValueError("base_point must be finite")
        return _rank_at(mats, base_point, h, tol)
    base = np.full(len(mats), 0.1)
    best = _rank_at(mats, base, h, tol)
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        if best == len(mats):
            break
        best = max(best, _rank_at(mats, base + rng.uniform(-0.05, 0.05, len(mats)), h, tol))
    return best


def _continued_fraction(x, tol, depth=20, max_den=10**6):
    """Convergent p/q with |x - p/q| <= tol, or None within the depth/denominator bounds."""
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    r = x
    for _ in range(depth):
        a = math.floor(r)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > max_den:
            return None
        if abs(x - h1 / k1) <= tol:
            return Fraction(h1, k1)
        frac = r - a
        if frac == 0:
            return None
        r = 1.0 / frac
    return None


def detect_period(X, tol=1e-9):
    """Smallest ``T > 0`` with ``exp(T X) = 1``, or None if the flow is not periodic.

    The eigenphases of ``X`` must be commensurate: each ratio to the largest
    phase is recognized as a fraction by continued-fraction expansion (depth
    20, denominators up to 10^6) and the candidate period is confirmed by
    checking ``||exp(T X) - 1||_F <= tol``.
    """
    X = as_matrix(X, "X")
    if not is_skew_hermitian(X):
        raise ValueError("detect_period needs a skew-Hermitian matrix")
    w = np.linalg.eigvalsh(-1j * X)
    scale = float(np.max(np.abs(w)))
    if scale == 0.0:
        raise ValueError("X = 0 has no period")
    ref = w[np.argmax(np.abs(w))]
    fracs = []
    for wj in w:
        if abs(wj) <= 1e-12 * scale:
            continue
        f = _continued_fraction(wj / ref, 1e-10)
        if f is None:
            return None
        fracs.append(f)
    den = math.lcm(*(f.denominator for f in fracs))
    nums = [int(f * den) for f in fracs]
    g = math.gcd(*nums)
    # eigenphases are integer multiples of |ref| * g / den
    T = 2.0 * math.pi * den / (abs(ref) * g)
    if np.linalg.norm(expm(T * X) - np.eye(X.shape[0])) > tol:
        return None
    return T


def dense_gate(X, alpha=GOLDEN, tol=1e-9):
    """``exp(alpha * T * X)`` for the period ``T`` of ``X``.

    With irrational ``alpha`` the powers of the gate are dense in the circle
    ``{exp(t X)}``.
    """
    T = detect_period(X, tol)
    if T is None:
        raise PreconditionError("X generates an aperiodic flow; no dense gate on a closed orbit")
    return expm(alpha * T * np.asarray(X, dtype=complex))


def eigenphase_coverage_gap(g, K):
    """Largest gap on the unit circle between eigenphases of ``g^0, ..., g^K``.

    Powers are formed by repeated multiplication; all eigenphases of all
    powers are pooled.
    """
    g = as_matrix(g, "g")
    P = np.eye(g.shape[0], dtype=complex)
    phases = []
    for _ in range(K + 1):
        phases.extend(np.angle(np.linalg.eigvals(P)))
        P = P @ g
    th = np.sort(np.mod(phases, 2 * np.pi))
    th = np.unique(np.round(th, 12))
    if len(th) == 1:
        return 2 * np.pi
    return float(np.max(np.diff(np.concatenate([th, [th[0] + 2 * np.pi]]))))


def power_cycle_length(g, max_k=10_000, tol=1e-9):
    """Smallest ``k >= 1`` with ``g^k = 1`` within ``tol``, or None up to ``max_k``."""
    g = as_matrix(g, "g")
    eye = np.eye(g.shape[0])
    P = g.copy()
    for k in range(1, max_k + 1):
        if np.linalg.norm(P - eye) <= tol:
            return k
        P = P @ g
    return None


def torus_generators(X):
    """Periodic generators ``i v_j v_j^dagger`` of the diagonal torus in X's eigenbasis.

    ``X`` is a real combination of them, so replacing ``X`` by these keeps the
    generated algebra. Each has period ``2*pi``.
    """
    X = as_matrix(X, "X")
    if not is_skew_hermitian(X):
        raise ValueError("torus_generators needs a skew-Hermitian matrix")
    _, V = np.linalg.eigh(-1j * X)
    return [1j * np.outer(V[:, j], V[:, j].conj()) for j in range(X.shape[0])]


@dataclass(frozen=True)
class GateSet:
    gates: tuple
    provenance: tuple

    def __post_init__(self):
        for name, g in self.gates:
            if np.linalg.norm(g.conj().T @ g - np.eye(g.shape[0])) > 1e-10:
                raise ValueError(f"gate {name!r} is not unitary")


def build_gate_set(sys, alpha=GOLDEN, tol=1e-9):
    """One dense gate per periodic generator; aperiodic ones are swapped for torus generators."""
    gates, prov = [], []
    for name, X in sys.generators:
        if not np.any(X):
            continue
        T = detect_period(X, tol)
        if T is not None:
            gates.append((name, expm(alpha * T * X)))
            prov.append((name, alpha, T))
            continue
        for j, Y in enumerate(torus_generators(X)):
            sub = f"{name}.torus{j}"
            T = 2 * math.pi
            gates.append((sub, expm(alpha * T * Y)))
            prov.append((sub, alpha, T))
    return GateSet(tuple(gates), tuple(prov))
