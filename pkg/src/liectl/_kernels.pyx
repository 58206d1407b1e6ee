# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""
import numpy as np

from libc.math cimport sqrt
from scipy.linalg.cython_blas cimport dgemm, dgemv, zgemm


cdef inline double _norm(const double* v, Py_ssize_t length) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t k
    for k in range(length):
        s += v[k] * v[k]
    return sqrt(s)


cdef void _project(double* Q, Py_ssize_t count, double* v, double* coef, Py_ssize_t length) noexcept nogil:
    # v -= Q^T (Q v) over rows [0, count): one classical Gram-Schmidt pass via BLAS
    if count == 0:
        return
    cdef int m = <int>length, k = <int>count, one = 1
    cdef double d_one = 1.0, d_zero = 0.0, d_minus = -1.0
    cdef char trans_t = b'T', trans_n = b'N'
    # row-major (count x length) is column-major (length x count)
    dgemv(&trans_t, &m, &k, &d_one, Q, &m, v, &one, &d_zero, coef, &one)
    dgemv(&trans_n, &m, &k, &d_minus, Q, &m, coef, &one, &d_one, v, &one)


def orthonormalize(V, double tol):
    cdef double[:, ::1] Vv = np.ascontiguousarray(V, dtype=np.float64)
    cdef Py_ssize_t k = Vv.shape[0], length = Vv.shape[1]
    cdef Py_ssize_t cap = min(k, length)
    out = np.zeros((cap, length))
    cdef double[:, ::1] Q = out
    cdef double[::1] buf = np.empty(length)
    cdef double[::1] coef = np.empty(max(cap, 1))
    cdef Py_ssize_t idx, j, count = 0
    cdef double nrm
    kept = []
    for idx in range(k):
        if count == cap:
            break
        for j in range(length):
            buf[j] = Vv[idx, j]
        _project(&Q[0, 0], count, &buf[0], &coef[0], length)
        _project(&Q[0, 0], count, &buf[0], &coef[0], length)
        nrm = _norm(&buf[0], length)
        if nrm > tol:
            for j in range(length):
                Q[count, j] = buf[j] / nrm
            kept.append(idx)
            count += 1
    return out[:count].copy(), kept


cdef void _bracket(double* Q, Py_ssize_t length, Py_ssize_t i, Py_ssize_t j, int n, double* out) noexcept nogil:
    # out = [Q_i, Q_j], rows read as row-major complex n x n matrices.
    # Column-major BLAS sees each as its transpose, so gemm(B, A) yields A B.
    cdef double complex one = 1.0, minus = -1.0, zero = 0.0
    cdef double complex* a = <double complex*>(Q + i * length)
    cdef double complex* b = <double complex*>(Q + j * length)
    cdef double complex* c = <double complex*>out
    cdef char tn = b'N'
    zgemm(&tn, &tn, &n, &n, &n, &one, b, &n, a, &n, &zero, c, &n)
    zgemm(&tn, &tn, &n, &n, &n, &minus, a, &n, b, &n, &one, c, &n)


cdef void _project_block(double* Q, Py_ssize_t count, double* R, Py_ssize_t rows, double* C,
                         Py_ssize_t length) noexcept nogil:
    # R -= (R Q^T) Q for the first `rows` rows of R
    if count == 0 or rows == 0:
        return
    cdef int L = <int>length, k = <int>count, r = <int>rows
    cdef double d_one = 1.0, d_zero = 0.0, d_minus = -1.0
    cdef char tt = b'T', tn = b'N'
    dgemm(&tt, &tn, &k, &r, &L, &d_one, Q, &L, R, &L, &d_zero, C, &k)
    dgemm(&tn, &tn, &L, &r, &k, &d_minus, Q, &L, C, &k, &d_one, R, &L)


def saturate(double[:, ::1] Q, Py_ssize_t count, Py_ssize_t n, double tol, Py_ssize_t max_sweeps):
    cdef Py_ssize_t cap = Q.shape[0], length = Q.shape[1]
    if cap == 0 or Q.strides[0] != length * sizeof(double):
        raise ValueError("Q must be a non-empty C-contiguous array")
    cdef Py_ssize_t lo = 0, hi = count, sweeps = 0, i, j, k, start
    cdef double nrm
    cdef double[:, ::1] Rbuf = np.empty((cap, length))
    cdef double[::1] coef = np.empty(cap * cap)
    cdef double* R = &Rbuf[0, 0]
    cdef double* q = &Q[0, 0]
    cdef double* cf = &coef[0]
    cdef double* v
    cdef int ni = <int>n
    while lo < hi and count < cap:
        sweeps += 1
        if sweeps > max_sweeps:
            raise RuntimeError(f"closure did not saturate within {max_sweeps} sweeps")
        with nogil:
            for i in range(max(lo, 1), hi):
                if count == cap:
                    break
                # all brackets of row i with earlier rows, projected in one block
                for j in range(i):
                    _bracket(q, length, i, j, ni, R + j * length)
                start = count
                _project_block(q, start, R, i, cf, length)
                for j in range(i):
                    v = R + j * length
                    if _norm(v, length) <= tol:
                        continue
                    _project(q + start * length, count - start, v, cf, length)
                    _project(q, count, v, cf, length)
                    nrm = _norm(v, length)
                    if nrm > tol:
                        for k in range(length):
                            Q[count, k] = v[k] / nrm
                        count += 1
                        if count == cap:
                            break
        lo, hi = hi, count
    return count, sweeps
