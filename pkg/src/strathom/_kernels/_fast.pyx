# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 versions of the kernels in ``_ref``.

Same pivoting rules, so output is bit-identical to the reference whenever no
intermediate value leaves the guarded range; otherwise OverflowError is raised
and the caller falls back to the arbitrary-precision path.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef long long LIM = (<long long>1) << 61


cdef inline long long _iabs(long long x):
    return -x if x < 0 else x


cdef inline long long _floordiv(long long x, long long y):
    cdef long long q = x / y
    if (x % y != 0) and ((x < 0) != (y < 0)):
        q -= 1
    return q


cdef inline long long _mul_chk(long long q, long long y) except? -9223372036854775807:
    if q == 0 or y == 0:
        return 0
    if _iabs(q) > LIM // _iabs(y):
        raise OverflowError("int64 kernel overflow")
    return q * y


cdef inline long long _clamp_chk(long long x) except? -9223372036854775807:
    if x > LIM or x < -LIM:
        raise OverflowError("int64 kernel overflow")
    return x


def snf_i64(cnp.ndarray[cnp.int64_t, ndim=2] a_in, bint transforms):
    cdef Py_ssize_t nrows = a_in.shape[0], ncols = a_in.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] a = a_in.copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=2] u = None, v = None
    if transforms:
        u = np.eye(nrows, dtype=np.int64)
        v = np.eye(ncols, dtype=np.int64)
    cdef Py_ssize_t t = 0, limit = min(nrows, ncols)
    cdef Py_ssize_t i, j, k, pi, pj
    cdef long long best, av, q, p, val
    cdef bint dirty, found, have
    while t < limit:
        have = False
        best = 0
        pi = pj = -1
        for i in range(t, nrows):
            for j in range(t, ncols):
                val = a[i, j]
                if val != 0:
                    av = _iabs(val)
                    if not have or av < best:
                        best, pi, pj = av, i, j
                        have = True
                        if best == 1:
                            break
            if have and best == 1:
                break
        if not have:
            break
        if pi != t:
            for k in range(ncols):
                val = a[t, k]; a[t, k] = a[pi, k]; a[pi, k] = val
            if transforms:
                for k in range(nrows):
                    val = u[t, k]; u[t, k] = u[pi, k]; u[pi, k] = val
        if pj != t:
            for k in range(nrows):
                val = a[k, t]; a[k, t] = a[k, pj]; a[k, pj] = val
            if transforms:
                for k in range(ncols):
                    val = v[k, t]; v[k, t] = v[k, pj]; v[k, pj] = val
        while True:
            dirty = False
            for i in range(nrows):
                if i != t and a[i, t] != 0:
                    q = _floordiv(a[i, t], a[t, t])
                    if q != 0:
                        for k in range(t, ncols):
                            a[i, k] = _clamp_chk(a[i, k] - _mul_chk(q, a[t, k]))
                        if transforms:
                            for k in range(nrows):
                                u[i, k] = _clamp_chk(u[i, k] - _mul_chk(q, u[t, k]))
                    if a[i, t] != 0:
                        for k in range(ncols):
                            val = a[t, k]; a[t, k] = a[i, k]; a[i, k] = val
                        if transforms:
                            for k in range(nrows):
                                val = u[t, k]; u[t, k] = u[i, k]; u[i, k] = val
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(ncols):
                if j != t and a[t, j] != 0:
                    q = _floordiv(a[t, j], a[t, t])
                    if q != 0:
                        for i in range(t, nrows):
                            a[i, j] = _clamp_chk(a[i, j] - _mul_chk(q, a[i, t]))
                        if transforms:
                            for i in range(ncols):
                                v[i, j] = _clamp_chk(v[i, j] - _mul_chk(q, v[i, t]))
                    if a[t, j] != 0:
                        for i in range(nrows):
                            val = a[i, t]; a[i, t] = a[i, j]; a[i, j] = val
                        if transforms:
                            for i in range(ncols):
                                val = v[i, t]; v[i, t] = v[i, j]; v[i, j] = val
                        dirty = True
                        break
            if dirty:
                continue
            p = a[t, t]
            found = False
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i, j] % p != 0:
                        for k in range(t, ncols):
                            a[t, k] = _clamp_chk(a[t, k] + a[i, k])
                        if transforms:
                            for k in range(nrows):
                                u[t, k] = _clamp_chk(u[t, k] + u[i, k])
                        found = True
                        break
                if found:
                    break
            if not found:
                break
        if a[t, t] < 0:
            for k in range(t, ncols):
                a[t, k] = -a[t, k]
            if transforms:
                for k in range(nrows):
                    u[t, k] = -u[t, k]
        t += 1
    diag = [int(a[i, i]) for i in range(limit)]
    rank = sum(1 for d in diag if d != 0)
    if transforms:
        return diag, rank, u.tolist(), v.tolist()
    return diag, rank, None, None


def kernel_basis_i64(cnp.ndarray[cnp.int64_t, ndim=2] a_in):
    cdef Py_ssize_t nrows = a_in.shape[0], ncols = a_in.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] e = a_in.copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=2] v = np.eye(ncols, dtype=np.int64)
    cdef Py_ssize_t r = 0, row_i, j, bj, rr
    cdef long long best, av, val, q
    cdef bint have, clean
    for row_i in range(nrows):
        if r >= ncols:
            break
        while True:
            have = False
            best = 0
            bj = -1
            for j in range(r, ncols):
                val = e[row_i, j]
                if val != 0:
                    av = _iabs(val)
                    if not have or av < best:
                        best, bj = av, j
                        have = True
            if not have:
                break
            if bj != r:
                for rr in range(nrows):
                    val = e[rr, r]; e[rr, r] = e[rr, bj]; e[rr, bj] = val
                for rr in range(ncols):
                    val = v[rr, r]; v[rr, r] = v[rr, bj]; v[rr, bj] = val
            clean = True
            for j in range(r + 1, ncols):
                if e[row_i, j] != 0:
                    q = _floordiv(e[row_i, j], e[row_i, r])
                    if q != 0:
                        for rr in range(nrows):
                            e[rr, j] = _clamp_chk(e[rr, j] - _mul_chk(q, e[rr, r]))
                        for rr in range(ncols):
                            v[rr, j] = _clamp_chk(v[rr, j] - _mul_chk(q, v[rr, r]))
                    if e[row_i, j] != 0:
                        clean = False
            if clean:
                if e[row_i, r] < 0:
                    for rr in range(nrows):
                        e[rr, r] = -e[rr, r]
                    for rr in range(ncols):
                        v[rr, r] = -v[rr, r]
                r += 1
                break
    cdef cnp.ndarray[cnp.int64_t, ndim=2] ker = np.ascontiguousarray(v[:, r:])
    return hermite_columns_i64(ker)


def hermite_columns_i64(cnp.ndarray[cnp.int64_t, ndim=2] b_in):
    cdef Py_ssize_t nrows = b_in.shape[0], ncols = b_in.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] b = b_in.copy()
    cdef Py_ssize_t c = 0, row_i, j, bj, rr
    cdef long long best, av, val, q
    cdef bint have, clean
    for row_i in range(nrows):
        if c >= ncols:
            break
        while True:
            have = False
            best = 0
            bj = -1
            for j in range(c, ncols):
                val = b[row_i, j]
                if val != 0:
                    av = _iabs(val)
                    if not have or av < best:
                        best, bj = av, j
                        have = True
            if not have:
                break
            if bj != c:
                for rr in range(nrows):
                    val = b[rr, c]; b[rr, c] = b[rr, bj]; b[rr, bj] = val
            clean = True
            for j in range(c + 1, ncols):
                if b[row_i, j] != 0:
                    q = _floordiv(b[row_i, j], b[row_i, c])
                    if q != 0:
                        for rr in range(nrows):
                            b[rr, j] = _clamp_chk(b[rr, j] - _mul_chk(q, b[rr, c]))
                    if b[row_i, j] != 0:
                        clean = False
            if clean:
                if b[row_i, c] < 0:
                    for rr in range(nrows):
                        b[rr, c] = -b[rr, c]
                for j in range(c):
                    q = _floordiv(b[row_i, j], b[row_i, c])
                    if q != 0:
                        for rr in range(nrows):
                            b[rr, j] = _clamp_chk(b[rr, j] - _mul_chk(q, b[rr, c]))
                c += 1
                break
    return b.tolist()


def solve_columns_i64(cnp.ndarray[cnp.int64_t, ndim=2] b,
                      cnp.ndarray[cnp.int64_t, ndim=2] y_in):
    cdef Py_ssize_t nrows = b.shape[0], ncols = b.shape[1], ycols = y_in.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] resid = y_in.copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=2] x = np.zeros((ncols, ycols), dtype=np.int64)
    cdef Py_ssize_t j, i, cc, pr
    cdef long long pv, val, q
    for j in range(ncols):
        pr = -1
        for i in range(nrows):
            if b[i, j] != 0:
                pr = i
                break
        if pr < 0:
            raise ArithmeticError("zero column in basis")
        pv = b[pr, j]
        for cc in range(ycols):
            val = resid[pr, cc]
            if val % pv != 0:
                raise ArithmeticError("inexact division in basis solve")
            q = val // pv
            x[j, cc] = _clamp_chk(q)
            if q != 0:
                for i in range(pr, nrows):
                    resid[i, cc] = _clamp_chk(resid[i, cc] - _mul_chk(q, b[i, j]))
    for i in range(nrows):
        for cc in range(ycols):
            if resid[i, cc] != 0:
                raise ArithmeticError("vector not in basis span")
    return x.tolist()


def modp_rref_i64(cnp.ndarray[cnp.int64_t, ndim=2] a_in, long long p):
    cdef Py_ssize_t nrows = a_in.shape[0], ncols = a_in.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] r = np.mod(a_in, p).astype(np.int64)
    cdef list pivots = []
    cdef Py_ssize_t lead = 0, i, j, k, pr
    cdef long long inv, f, val
    for j in range(ncols):
        if lead >= nrows:
            break
        pr = -1
        for i in range(lead, nrows):
            if r[i, j] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != lead:
            for k in range(ncols):
                val = r[lead, k]; r[lead, k] = r[pr, k]; r[pr, k] = val
        inv = pow(int(r[lead, j]), int(p - 2), int(p))
        for k in range(j, ncols):
            r[lead, k] = (r[lead, k] * inv) % p
        for i in range(nrows):
            if i != lead and r[i, j] != 0:
                f = r[i, j]
                for k in range(j, ncols):
                    r[i, k] = (r[i, k] - f * r[lead, k]) % p
        pivots.append(j)
        lead += 1
    return len(pivots), pivots, r


def modp_rank_i64(cnp.ndarray[cnp.int64_t, ndim=2] a_in, long long p):
    return modp_rref_i64(a_in, p)[0]


def modp_kernel_i64(cnp.ndarray[cnp.int64_t, ndim=2] a_in, long long p):
    cdef Py_ssize_t ncols = a_in.shape[1]
    rank, pivots, r = modp_rref_i64(a_in, p)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] ker = np.zeros((ncols, len(free)), dtype=np.int64)
    cdef Py_ssize_t idx, i
    cdef long long v
    for idx in range(len(free)):
        ker[free[idx], idx] = 1
        for i in range(len(pivots)):
            v = r[i, free[idx]]
            if v:
                ker[pivots[i], idx] = (p - v) % p
    return ker.tolist()
