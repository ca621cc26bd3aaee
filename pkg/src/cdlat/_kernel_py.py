"""Pure-Python scan kernels; same contract as the compiled ``_kernel`` module.

``tensor`` is an integer array of shape (d, e, d) with
``tensor[i, w, j] = comm[i][j][w]``.  For a subspace U of dimension k the
measure exponent is ``2e + k + d - rank(form rows of U)``.
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "python"


def _free_columns(pivots, d):
    ps = set(pivots)
    return [[j for j in range(c + 1, d) if j not in ps] for c in pivots]


def _masks(tensor, d, e):
    out = []
    for i in range(d):
        row = []
        for w in range(e):
            m = 0
            for j in range(d):
                if tensor[i][w][j] & 1:
                    m |= 1 << (d - 1 - j)
            row.append(m)
        out.append(row)
    return out


def _scan_gf2(tensor, d, e, pivots, collect):
    F = _masks(tensor, d, e)
    k = len(pivots)
    frees = _free_columns(pivots, d)
    base = 2 * e + k + d
    state = {"best": -1, "nbest": 0, "scanned": 0}
    members = []

    def rows_of(us):
        return tuple(tuple((x >> (d - 1 - j)) & 1 for j in range(d)) for x in us)

    def rec(r, basis, rank, us):
        if r == k:
            val = base - rank
            state["scanned"] += 1
            if val > state["best"]:
                state["best"], state["nbest"] = val, 1
            elif val == state["best"]:
                state["nbest"] += 1
            if val == collect:
                members.append(rows_of(us))
            return
        fr = frees[r]
        nf = len(fr)
        pbit = 1 << (d - 1 - pivots[r])
        for a in range(1 << nf):
            u = pbit
            for t in range(nf):
                if (a >> (nf - 1 - t)) & 1:
                    u |= 1 << (d - 1 - fr[t])
            nb = list(basis)
            nr = rank
            for w in range(e):
                x = 0
                uu = u
                while uu:
                    h = uu.bit_length() - 1
                    x ^= F[d - 1 - h][w]
                    uu ^= 1 << h
                while x:
                    h = x.bit_length() - 1
                    if nb[h]:
                        x ^= nb[h]
                    else:
                        nb[h] = x
                        nr += 1
                        break
            rec(r + 1, nb, nr, us + [u])

    rec(0, [0] * max(d, 1), 0, [])
    return state["best"], state["nbest"], state["scanned"], members


def _insert(basis, x, p, inv, d):
    """Reduce x against basis {col: row}; store it if independent."""
    for c in range(d):
        f = x[c]
        if not f:
            continue
        row = basis.get(c)
        if row is None:
            s = inv[f]
            basis[c] = [v * s % p for v in x]
            return True
        for j in range(c, d):
            if row[j]:
                x[j] = (x[j] - f * row[j]) % p
    return False


def _form_rows(tensor, u, p, d, e):
    rows = [[0] * d for _ in range(e)]
    for i in range(d):
        a = u[i]
        if a:
            for w in range(e):
                src = tensor[i][w]
                dst = rows[w]
                for j in range(d):
                    if src[j]:
                        dst[j] = (dst[j] + a * src[j]) % p
    return rows


def _scan_generic(tensor, d, e, p, pivots, collect):
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    k = len(pivots)
    frees = _free_columns(pivots, d)
    base = 2 * e + k + d
    state = {"best": -1, "nbest": 0, "scanned": 0}
    members = []

    def rec(r, basis, rank, us):
        if r == k:
            val = base - rank
            state["scanned"] += 1
            if val > state["best"]:
                state["best"], state["nbest"] = val, 1
            elif val == state["best"]:
                state["nbest"] += 1
            if val == collect:
                members.append(tuple(us))
            return
        fr = frees[r]
        nf = len(fr)
        for a in range(p**nf):
            u = [0] * d
            u[pivots[r]] = 1
            q = a
            for t in range(nf - 1, -1, -1):
                u[fr[t]] = q % p
                q //= p
            nb = dict(basis)
            nr = rank
            for x in _form_rows(tensor, u, p, d, e):
                if _insert(nb, x, p, inv, d):
                    nr += 1
            rec(r + 1, nb, nr, us + [tuple(u)])

    rec(0, {}, 0, [])
    return state["best"], state["nbest"], state["scanned"], members


def scan_pattern(tensor, p, pivots, collect=-1):
    """Scan every subspace with the given RREF pivot columns.

    Returns ``(best, count_at_best, scanned, members)`` where members are the
    RREF bases whose measure exponent equals ``collect``.
    """
    arr = np.asarray(tensor, dtype=np.int64)
    d, e = arr.shape[0], arr.shape[1]
    rows = arr.tolist()
    pivots = tuple(int(c) for c in pivots)
    if p == 2:
        return _scan_gf2(rows, d, e, pivots, collect)
    return _scan_generic(rows, d, e, p, pivots, collect)


def batch_measure(tensor, p, samples):
    """Span dimension and form-rank for each spanning set in ``samples`` (N, k, d)."""
    arr = np.asarray(tensor, dtype=np.int64)
    d, e = arr.shape[0], arr.shape[1]
    tensor = arr.tolist()
    samples = np.asarray(samples).tolist()
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    n = len(samples)
    span = np.zeros(n, dtype=np.int64)
    frank = np.zeros(n, dtype=np.int64)
    for s in range(n):
        b1: dict = {}
        b2: dict = {}
        r1 = r2 = 0
        for row in samples[s]:
            u = [int(x) % p for x in row]
            if _insert(b1, list(u), p, inv, d):
                r1 += 1
                for x in _form_rows(tensor, u, p, d, e):
                    if _insert(b2, x, p, inv, d):
                        r2 += 1
        span[s] = r1
        frank[s] = r2
    return span, frank
