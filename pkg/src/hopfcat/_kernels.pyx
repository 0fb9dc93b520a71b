# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the Gram factorization search DᵀD = M."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt


cdef long _isqrt(long n):
    cdef long r = <long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def feasible(R, cols):
    cdef cnp.int64_t[:, :] Rv = np.ascontiguousarray(R, dtype=np.int64)
    cdef cnp.int64_t[:] c = np.asarray(cols, dtype=np.int64)
    cdef Py_ssize_t i, j, n = c.shape[0]
    cdef long x, y, rxx, rxy
    for i in range(n):
        x = c[i]
        rxx = Rv[x, x]
        if rxx < 0:
            return False
        for j in range(i + 1, n):
            y = c[j]
            rxy = Rv[x, y]
            if rxy < 0 or rxy * rxy > rxx * Rv[y, y]:
                return False
    return True


def candidate_rows(R, pivot, later):
    cdef cnp.int64_t[:, :] Rv = np.ascontiguousarray(R, dtype=np.int64)
    cdef cnp.int64_t[:] L = np.asarray(later, dtype=np.int64)
    cdef Py_ssize_t m = L.shape[0]
    cdef long piv = pivot
    cdef cnp.int64_t[:] vals = np.zeros(m, dtype=np.int64)
    cdef cnp.int64_t[:] hi = np.zeros(m, dtype=np.int64)
    cdef long p, k, v, h, x, j
    out = []
    for p in range(_isqrt(Rv[piv, piv]), 0, -1):
        k = 0
        hi[0] = -1
        # iterative depth-first enumeration, values in decreasing order
        while k >= 0:
            if k == m:
                d = {pivot: p}
                for j in range(m):
                    d[int(L[j])] = int(vals[j])
                out.append(d)
                k -= 1
                continue
            if hi[k] == -1:
                x = L[k]
                h = _isqrt(Rv[x, x])
                if p and Rv[piv, x] // p < h:
                    h = Rv[piv, x] // p
                for j in range(k):
                    v = vals[j]
                    if v and Rv[L[j], x] // v < h:
                        h = Rv[L[j], x] // v
                vals[k] = h + 1
                hi[k] = h
            vals[k] -= 1
            if vals[k] < 0:
                hi[k] = -1
                k -= 1
                continue
            k += 1
            if k < m:
                hi[k] = -1
    return out
