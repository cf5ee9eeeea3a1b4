# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels; same contract as ``fqrank._pykernels``."""

import numpy as np
from libc.stdlib cimport malloc, free

BACKEND = "cython"


cdef struct Field:
    long p
    long m
    long q
    const long long* exp
    const long long* log


cdef inline long fsub(long a, long b, const Field* F) noexcept nogil:
    cdef long out = 0, scale = 1, da, db, i
    if F.p == 2:
        return a ^ b
    if F.m == 1:
        a = a - b
        return a + F.p if a < 0 else a
    for i in range(F.m):
        da = a % F.p
        db = b % F.p
        da = da - db
        if da < 0:
            da += F.p
        out += da * scale
        a //= F.p
        b //= F.p
        scale *= F.p
    return out


cdef inline long fmul(long a, long b, const Field* F) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return <long>F.exp[F.log[a] + F.log[b]]


cdef inline long finv(long a, const Field* F) noexcept nogil:
    return <long>F.exp[(F.q - 1) - F.log[a]]


cdef int full_row_rank(long* mat, long n, long k, long* pcols, const Field* F) noexcept nogil:
    """Row-by-row reduction in place; 1 when all n rows are independent."""
    cdef long i, j, c, pc, f, iv
    cdef long* row
    cdef long* piv
    for i in range(n):
        row = mat + i * k
        for j in range(i):
            piv = mat + j * k
            f = row[pcols[j]]
            if f != 0:
                for c in range(k):
                    if piv[c] != 0:
                        row[c] = fsub(row[c], fmul(f, piv[c], F), F)
        pc = -1
        for c in range(k):
            if row[c] != 0:
                pc = c
                break
        if pc < 0:
            return 0
        pcols[i] = pc
        if row[pc] != 1:
            iv = finv(row[pc], F)
            for c in range(pc, k):
                if row[c] != 0:
                    row[c] = fmul(row[c], iv, F)
    return 1


def count_values(long n, long k, flat_pos, values, long p, long m, exp, log):
    cdef const long long[::1] pos = np.ascontiguousarray(flat_pos, dtype=np.int64)
    arr = np.ascontiguousarray(values, dtype=np.int64)
    # explicit row count: reshape(-1, 0) is ambiguous for weight-0 patterns
    cdef const long long[:, ::1] vals = arr.reshape(arr.shape[0], pos.shape[0])
    cdef const long long[::1] e = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const long long[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef Field F
    cdef long T = vals.shape[0], wt = pos.shape[0], t, w, c, total = 0
    cdef long* mat = <long*>malloc(n * k * sizeof(long))
    cdef long* pcols = <long*>malloc(n * sizeof(long))
    F.p = p
    F.m = m
    F.q = p ** m
    F.exp = &e[0]
    F.log = &lg[0]
    try:
        with nogil:
            for t in range(T):
                for c in range(n * k):
                    mat[c] = 0
                for w in range(wt):
                    mat[pos[w]] = vals[t, w]
                total += full_row_rank(mat, n, k, pcols, &F)
    finally:
        free(mat)
        free(pcols)
    return total


def count_range(long n, long k, flat_pos, long p, long m, exp, log, long long start, long long stop):
    cdef const long long[::1] pos = np.ascontiguousarray(flat_pos, dtype=np.int64)
    cdef const long long[::1] e = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const long long[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef Field F
    cdef long wt = pos.shape[0], w, c
    cdef long long t, rem, total = 0
    cdef long* digits = <long*>malloc((wt + 1) * sizeof(long))
    cdef long* mat = <long*>malloc(n * k * sizeof(long))
    cdef long* pcols = <long*>malloc(n * sizeof(long))
    F.p = p
    F.m = m
    F.q = p ** m
    F.exp = &e[0]
    F.log = &lg[0]
    try:
        with nogil:
            rem = start
            for w in range(wt - 1, -1, -1):
                digits[w] = rem % F.q
                rem //= F.q
            for t in range(start, stop):
                for c in range(n * k):
                    mat[c] = 0
                for w in range(wt):
                    mat[pos[w]] = digits[w]
                total += full_row_rank(mat, n, k, pcols, &F)
                # odometer step, last cell fastest
                w = wt - 1
                while w >= 0:
                    digits[w] += 1
                    if digits[w] < F.q:
                        break
                    digits[w] = 0
                    w -= 1
    finally:
        free(digits)
        free(mat)
        free(pcols)
    return total
