# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels; contract mirrors ``cdlat._kernel_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memcpy, memset
from libc.stdint cimport uint64_t

IMPLEMENTATION = "cython"

cdef enum:
    MAXD = 64


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef struct Ctx:
    int d
    int e
    int p
    int k
    int base
    int collect
    long long best
    long long nbest
    long long scanned
    int *pivots
    int *nfree
    int *frees        # k x d, row r holds free columns of row r
    uint64_t *F2      # d x e masks (p == 2)
    int *F            # d x e x d (generic p)
    int *inv
    uint64_t *b2      # (k+1) x MAXD xor bases
    int *bg           # (k+1) x d x d generic bases
    int *has          # (k+1) x d pivot flags
    int *ranks        # k+1
    uint64_t *u2      # k row masks
    int *ug           # k x d rows


cdef inline int _insert2(uint64_t *basis, uint64_t x) nogil:
    cdef int h
    while x:
        h = 63 - __builtin_clzll(x)
        if basis[h]:
            x ^= basis[h]
        else:
            basis[h] = x
            return 1
    return 0


cdef inline int _insert_g(int *basis, int *has, int *x, int d, int p, int *inv) nogil:
    cdef int c, j, f, s
    cdef int *row
    for c in range(d):
        f = x[c]
        if f == 0:
            continue
        row = basis + c * d
        if not has[c]:
            s = inv[f]
            for j in range(d):
                row[j] = (x[j] * s) % p
            has[c] = 1
            return 1
        for j in range(c, d):
            if row[j]:
                x[j] = (x[j] - f * row[j]) % p
                if x[j] < 0:
                    x[j] += p
    return 0


cdef object _rows_from_masks(Ctx *c):
    cdef int r, j
    out = []
    for r in range(c.k):
        out.append(tuple([<int>((c.u2[r] >> (c.d - 1 - j)) & 1) for j in range(c.d)]))
    return tuple(out)


cdef object _rows_from_generic(Ctx *c):
    cdef int r, j
    out = []
    for r in range(c.k):
        out.append(tuple([c.ug[r * c.d + j] for j in range(c.d)]))
    return tuple(out)


cdef void _leaf(Ctx *c, int rank, list members):
    cdef long long val = c.base - rank
    c.scanned += 1
    if val > c.best:
        c.best = val
        c.nbest = 1
    elif val == c.best:
        c.nbest += 1
    if val == c.collect:
        if c.p == 2:
            members.append(_rows_from_masks(c))
        else:
            members.append(_rows_from_generic(c))


cdef void _rec2(Ctx *c, int r, list members):
    cdef int d = c.d, e = c.e, nf = c.nfree[r], t, w, h, nr
    cdef uint64_t a, u, x, uu, limit = (<uint64_t>1) << nf
    cdef uint64_t *cur = c.b2 + r * MAXD
    cdef uint64_t *nxt = c.b2 + (r + 1) * MAXD
    cdef uint64_t pbit
    cdef int *fr = c.frees + r * d
    if r == c.k:
        _leaf(c, c.ranks[r], members)
        return
    pbit = (<uint64_t>1) << (d - 1 - c.pivots[r])
    a = 0
    while a < limit:
        u = pbit
        for t in range(nf):
            if (a >> (nf - 1 - t)) & 1:
                u |= (<uint64_t>1) << (d - 1 - fr[t])
        c.u2[r] = u
        memcpy(nxt, cur, MAXD * sizeof(uint64_t))
        nr = c.ranks[r]
        for w in range(e):
            x = 0
            uu = u
            while uu:
                h = 63 - __builtin_clzll(uu)
                x ^= c.F2[(d - 1 - h) * e + w]
                uu ^= (<uint64_t>1) << h
            nr += _insert2(nxt, x)
        c.ranks[r + 1] = nr
        _rec2(c, r + 1, members)
        a += 1


cdef void _recg(Ctx *c, int r, list members):
    cdef int d = c.d, e = c.e, p = c.p, nf = c.nfree[r], t, w, i, j, nr, q, av
    cdef long long a, limit = 1
    cdef int *fr = c.frees + r * d
    cdef int *cur = c.bg + r * d * d
    cdef int *nxt = c.bg + (r + 1) * d * d
    cdef int *hcur = c.has + r * d
    cdef int *hnxt = c.has + (r + 1) * d
    cdef int *u = c.ug + r * d
    cdef int xrow[MAXD]
    if r == c.k:
        _leaf(c, c.ranks[r], members)
        return
    for t in range(nf):
        limit *= p
    a = 0
    while a < limit:
        for j in range(d):
            u[j] = 0
        u[c.pivots[r]] = 1
        q = <int>a
        for t in range(nf - 1, -1, -1):
            u[fr[t]] = q % p
            q = q // p
        memcpy(nxt, cur, d * d * sizeof(int))
        memcpy(hnxt, hcur, d * sizeof(int))
        nr = c.ranks[r]
        for w in range(e):
            for j in range(d):
                xrow[j] = 0
            for i in range(d):
                av = u[i]
                if av:
                    for j in range(d):
                        xrow[j] += av * c.F[(i * e + w) * d + j]
            for j in range(d):
                xrow[j] %= p
            nr += _insert_g(nxt, hnxt, xrow, d, p, c.inv)
        c.ranks[r + 1] = nr
        _recg(c, r + 1, members)
        a += 1


def scan_pattern(tensor, int p, pivots, int collect=-1):
    """Scan every subspace with the given RREF pivot columns.

    Returns ``(best, count_at_best, scanned, members)``.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=3] T = np.ascontiguousarray(tensor, dtype=np.int64)
    cdef int d = T.shape[0], e = T.shape[1], k = len(pivots)
    cdef int i, j, w, r, n
    cdef Ctx c
    if d > MAXD:
        raise ValueError("ambient dimension above 64 is not supported by the compiled kernel")
    memset(&c, 0, sizeof(Ctx))
    c.d, c.e, c.p, c.k = d, e, p, k
    c.base = 2 * e + k + d
    c.collect = collect
    c.best = -1
    c.pivots = <int *>calloc(k + 1, sizeof(int))
    c.nfree = <int *>calloc(k + 1, sizeof(int))
    c.frees = <int *>calloc((k + 1) * (d + 1), sizeof(int))
    c.ranks = <int *>calloc(k + 2, sizeof(int))
    c.F2 = <uint64_t *>calloc(d * e + 1, sizeof(uint64_t))
    c.F = <int *>calloc(d * e * d + 1, sizeof(int))
    c.inv = <int *>calloc(p, sizeof(int))
    c.b2 = <uint64_t *>calloc((k + 1) * MAXD, sizeof(uint64_t))
    c.bg = <int *>calloc((k + 1) * d * d + 1, sizeof(int))
    c.has = <int *>calloc((k + 1) * d + 1, sizeof(int))
    c.u2 = <uint64_t *>calloc(k + 1, sizeof(uint64_t))
    c.ug = <int *>calloc((k + 1) * d + 1, sizeof(int))
    members = []
    try:
        piv = [int(x) for x in pivots]
        ps = set(piv)
        for r in range(k):
            c.pivots[r] = piv[r]
            n = 0
            for j in range(piv[r] + 1, d):
                if j not in ps:
                    c.frees[r * d + n] = j
                    n += 1
            c.nfree[r] = n
        for i in range(1, p):
            c.inv[i] = pow(i, p - 2, p)
        for i in range(d):
            for w in range(e):
                for j in range(d):
                    c.F[(i * e + w) * d + j] = <int>(T[i, w, j] % p)
                    if p == 2 and (T[i, w, j] & 1):
                        c.F2[i * e + w] |= (<uint64_t>1) << (d - 1 - j)
        if p == 2:
            _rec2(&c, 0, members)
        else:
            _recg(&c, 0, members)
        return c.best, c.nbest, c.scanned, members
    finally:
        free(c.pivots); free(c.nfree); free(c.frees); free(c.ranks)
        free(c.F2); free(c.F); free(c.inv); free(c.b2); free(c.bg)
        free(c.has); free(c.u2); free(c.ug)


def batch_measure(tensor, int p, samples):
    """Span dimension and form-rank for each spanning set in ``samples`` (N, k, d)."""
    cdef cnp.ndarray[cnp.int64_t, ndim=3] T = np.ascontiguousarray(tensor, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=3] S = np.ascontiguousarray(samples, dtype=np.int64)
    cdef int d = T.shape[0], e = T.shape[1], n = S.shape[0], k = S.shape[1]
    cdef int s, r, i, j, w, av, r1, r2
    cdef cnp.ndarray[cnp.int64_t, ndim=1] span = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] frank = np.zeros(n, dtype=np.int64)
    cdef int u[MAXD]
    cdef int tmp[MAXD]
    cdef int xrow[MAXD]
    cdef int *F
    cdef int *inv
    cdef int *b1
    cdef int *h1
    cdef int *b2
    cdef int *h2
    if d > MAXD:
        raise ValueError("ambient dimension above 64 is not supported by the compiled kernel")
    if n == 0:
        return span, frank
    if S.shape[2] != d:
        raise ValueError("sample rows do not match the ambient dimension")
    F = <int *>calloc(d * e * d + 1, sizeof(int))
    inv = <int *>calloc(p, sizeof(int))
    b1 = <int *>calloc(d * d + 1, sizeof(int))
    h1 = <int *>calloc(d + 1, sizeof(int))
    b2 = <int *>calloc(d * d + 1, sizeof(int))
    h2 = <int *>calloc(d + 1, sizeof(int))
    try:
        for i in range(1, p):
            inv[i] = pow(i, p - 2, p)
        for i in range(d):
            for w in range(e):
                for j in range(d):
                    F[(i * e + w) * d + j] = <int>(T[i, w, j] % p)
        for s in range(n):
            memset(h1, 0, d * sizeof(int))
            memset(h2, 0, d * sizeof(int))
            r1 = 0
            r2 = 0
            for r in range(k):
                for j in range(d):
                    u[j] = <int>(S[s, r, j] % p)
                    if u[j] < 0:
                        u[j] += p
                    tmp[j] = u[j]
                if not _insert_g(b1, h1, tmp, d, p, inv):
                    continue
                r1 += 1
                for w in range(e):
                    for j in range(d):
                        xrow[j] = 0
                    for i in range(d):
                        av = u[i]
                        if av:
                            for j in range(d):
                                xrow[j] += av * F[(i * e + w) * d + j]
                    for j in range(d):
                        xrow[j] %= p
                    r2 += _insert_g(b2, h2, xrow, d, p, inv)
            span[s] = r1
            frank[s] = r2
        return span, frank
    finally:
        free(F); free(inv); free(b1); free(h1); free(b2); free(h2)
