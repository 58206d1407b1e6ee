"""Time the Lie-closure kernels with each available backend.

    python benchmarks/bench_kernels.py [--repeat 5]

Cases that stop at a proper subalgebra (so(n) from two random real
antisymmetric generators) run saturation to completion; full-algebra cases
stop early at the ambient dimension.
"""
import argparse
import time

import numpy as np

from liectl import lie
from liectl._backend import available_backends
from liectl.su import canonical_generator_pair
from liectl.tensor import default_candidate, product_subalgebra


def so_pair(n, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(2):
        M = rng.standard_normal((n, n))
        out.append((M - M.T).astype(complex))
    return out


def cases():
    for n in (6, 8, 10):
        yield f"canonical pair su({n})", list(canonical_generator_pair(n))
    for n in (8, 12, 16):
        yield f"so({n}) subalgebra", so_pair(n)
    for m, n in ((2, 3), (2, 4)):
        yield f"extension {m}x{n}", list(product_subalgebra(m, n).basis) + [default_candidate(m, n)]


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'case':28s}{'dim':>6s}" + "".join(f"{b + ' (ms)':>16s}" for b in names)
          + ("   speedup" if len(names) > 1 else ""))
    original = lie.kernels
    try:
        for label, gens in cases():
            row, dims = {}, set()
            for b in names:
                lie.kernels = backends[b]
                t, alg = best_time(lambda: lie.lie_closure_of(gens), args.repeat)
                row[b] = t
                dims.add(alg.dim_algebra)
            assert len(dims) == 1, f"backends disagree on {label}: {dims}"
            line = f"{label:28s}{dims.pop():6d}" + "".join(f"{row[b] * 1e3:16.2f}" for b in names)
            if len(names) > 1:
                line += f"{row['python'] / row['cython']:9.1f}x"
            print(line)
    finally:
        lie.kernels = original


if __name__ == "__main__":
    main()
