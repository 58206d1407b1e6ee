"""Pure-Python (numpy) versions of the hot kernels.

Both backends share one calling convention. Matrices travel as real row
vectors of length ``2*n*n`` holding interleaved real/imaginary parts, so the
Euclidean dot product of two rows equals ``Re tr(X^dagger Y)``.
"""
import numpy as np

__all__ = ["orthonormalize", "saturate"]


def _project(v, Q, count):
    # two passes of modified Gram-Schmidt ("twice is enough")
    for _ in range(2):
        for r in range(count):
            v -= (Q[r] @ v) * Q[r]
    return v


def orthonormalize(V, tol):
    """Orthonormalize the rows of ``V`` in order.

    Rows whose residual norm after re-orthogonalization is ``<= tol`` are
    dropped. Returns ``(Q, kept)`` where ``kept`` lists the indices of the
    rows that contributed a new direction.
    """
    V = np.ascontiguousarray(V, dtype=np.float64)
    k, length = V.shape
    Q = np.zeros((min(k, length), length))
    kept = []
    count = 0
    for idx in range(k):
        if count == Q.shape[0]:
            break
        v = _project(V[idx].copy(), Q, count)
        nrm = np.sqrt(v @ v)
        if nrm > tol:
            Q[count] = v / nrm
            kept.append(idx)
            count += 1
    return Q[:count].copy(), kept


def _bracket_rows(Q, i, n):
    mats = Q[: i + 1].view(np.complex128).reshape(i + 1, n, n)
    bi = mats[i]
    others = mats[:i]
    C = bi @ others - others @ bi
    return np.ascontiguousarray(C).reshape(i, n * n).view(np.float64)


def saturate(Q, count, n, tol, max_sweeps):
    """Close the span of ``Q[:count]`` under the commutator, in place.

    ``Q`` must be preallocated with ``Q.shape[0]`` equal to the largest
    dimension the closure can reach; rows ``[0, count)`` are orthonormal on
    entry. Each sweep brackets the rows added by the previous sweep against
    every earlier row. Returns ``(count, sweeps)``.
    """
    cap = Q.shape[0]
    lo, hi = 0, count
    sweeps = 0
    while lo < hi and count < cap:
        sweeps += 1
        if sweeps > max_sweeps:
            raise RuntimeError(f"closure did not saturate within {max_sweeps} sweeps")
        for i in range(max(lo, 1), hi):
            if count == cap:
                break
            start = count
            R = _bracket_rows(Q, i, n)
            R = R - (R @ Q[:start].T) @ Q[:start]
            norms = np.sqrt(np.einsum("ij,ij->i", R, R))
            for row in np.flatnonzero(norms > tol):
                v = R[row]
                # new rows from this batch, then a full second pass
                for r in range(start, count):
                    v -= (Q[r] @ v) * Q[r]
                for r in range(count):
                    v -= (Q[r] @ v) * Q[r]
                nrm = np.sqrt(v @ v)
                if nrm > tol:
                    Q[count] = v / nrm
                    count += 1
                    if count == cap:
                        break
        lo, hi = hi, count
    return count, sweeps
