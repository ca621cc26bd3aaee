"""Exact linear algebra over GF(p) and canonical subspaces.

Matrices are immutable tuples of row tuples holding residues in ``[0, p)``.
Subspaces are stored only through their reduced row echelon basis, so two
subspaces compare equal exactly when they are the same subspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Row = tuple[int, ...]


class FieldError(ValueError):
    """Raised for modulus or dimension mismatches."""


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"modulus must be prime, got {p!r}")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> tuple[int, ...]:
    """Multiplicative inverses mod p; index 0 maps to 0."""
    return (0,) + tuple(pow(a, p - 2, p) for a in range(1, p))


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix over GF(p)."""

    p: int
    rows: int
    cols: int
    entries: tuple[Row, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise FieldError("row count does not match entries")
        for r in self.entries:
            if len(r) != self.cols:
                raise FieldError("ragged matrix")
            for x in r:
                if not 0 <= x < self.p:
                    raise FieldError(f"entry {x} outside [0, {self.p})")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], p: int, cols: int | None = None) -> "FieldMatrix":
        check_prime(p)
        ent = tuple(tuple(int(x) % p for x in r) for r in rows)
        if cols is None:
            if not ent:
                raise FieldError("cols required for an empty matrix")
            cols = len(ent[0])
        return cls(p, len(ent), cols, ent)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FieldMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], p, cols)

    @classmethod
    def identity(cls, n: int, p: int) -> "FieldMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], p, n)

    def __getitem__(self, idx: int) -> Row:
        return self.entries[idx]

    def stack(self, other: "FieldMatrix") -> "FieldMatrix":
        if other.p != self.p or other.cols != self.cols:
            raise FieldError("cannot stack matrices of different shape or modulus")
        return FieldMatrix(self.p, self.rows + other.rows, self.cols, self.entries + other.entries)

    def apply(self, v: Sequence[int]) -> Row:
        """Matrix-vector product m*v."""
        if len(v) != self.cols:
            raise FieldError("vector length mismatch")
        p = self.p
        return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.entries)


def _rref_rows(rows: list[list[int]], cols: int, p: int) -> tuple[list[list[int]], list[int]]:
    inv = inverse_table(p)
    work = [list(r) for r in rows]
    pivots: list[int] = []
    lead = 0
    for c in range(cols):
        if lead == len(work):
            break
        sel = None
        for i in range(lead, len(work)):
            if work[i][c]:
                sel = i
                break
        if sel is None:
            continue
        work[lead], work[sel] = work[sel], work[lead]
        prow = work[lead]
        s = inv[prow[c]]
        if s != 1:
            for j in range(c, cols):
                prow[j] = prow[j] * s % p
        for i, row in enumerate(work):
            if i != lead and row[c]:
                f = row[c]
                for j in range(c, cols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        lead += 1
    return work[:lead], pivots


def rref(m: FieldMatrix) -> tuple[FieldMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    The returned matrix keeps the input's shape: nonzero rows first, then zero
    rows.
    """
    nz, pivots = _rref_rows([list(r) for r in m.entries], m.cols, m.p)
    rank = len(nz)
    full = [tuple(r) for r in nz] + [(0,) * m.cols] * (m.rows - rank)
    return FieldMatrix(m.p, m.rows, m.cols, tuple(full)), rank, pivots


def rank(m: FieldMatrix) -> int:
    return rref(m)[1]


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^d held by its canonical RREF basis."""

    p: int
    ambient_dim: int
    basis: tuple[Row, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], p: int, d: int) -> "Subspace":
        check_prime(p)
        rows = [[int(x) % p for x in v] for v in vectors]
        for r in rows:
            if len(r) != d:
                raise FieldError(f"vector of length {len(r)} in ambient dimension {d}")
        nz, piv = _rref_rows(rows, d, p)
        return cls(p, d, tuple(tuple(r) for r in nz), tuple(piv))

    @classmethod
    def zero(cls, d: int, p: int) -> "Subspace":
        return cls(check_prime(p), d, (), ())

    @classmethod
    def full(cls, d: int, p: int) -> "Subspace":
        check_prime(p)
        return cls(p, d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), tuple(range(d)))

    @classmethod
    def coordinate(cls, indices: Iterable[int], d: int, p: int) -> "Subspace":
        """Span of the standard basis vectors at the given coordinates."""
        idx = sorted(set(indices))
        return cls.span([[int(j == i) for j in range(d)] for i in idx], p, d)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sort_key(self) -> tuple:
        return (self.dim, self.basis)

    def matrix(self) -> FieldMatrix:
        return FieldMatrix(self.p, self.dim, self.ambient_dim, self.basis)

    def reduce(self, v: Sequence[int]) -> Row:
        """Residue of v after elimination against the basis."""
        p = self.p
        w = [x % p for x in v]
        for row, c in zip(self.basis, self.pivots):
            f = w[c]
            if f:
                for j in range(c, self.ambient_dim):
                    if row[j]:
                        w[j] = (w[j] - f * row[j]) % p
        return tuple(w)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def vectors(self) -> Iterator[Row]:
        """Every vector of the subspace (p**dim of them)."""
        p, d = self.p, self.ambient_dim
        for coeffs in itertools.product(range(p), repeat=self.dim):
            v = [0] * d
            for a, row in zip(coeffs, self.basis):
                if a:
                    for j in range(d):
                        v[j] = (v[j] + a * row[j]) % p
            yield tuple(v)

    def __str__(self) -> str:
        return "<" + ", ".join("".join(map(str, r)) for r in self.basis) + ">"


def _same_space(u: Subspace, v: Subspace) -> None:
    if u.p != v.p or u.ambient_dim != v.ambient_dim:
        raise FieldError(
            f"subspaces live in different spaces: GF({u.p})^{u.ambient_dim} vs GF({v.p})^{v.ambient_dim}"
        )


def kernel(m: FieldMatrix) -> Subspace:
    """Null space {v : m v = 0} in canonical form."""
    red, rk, pivots = rref(m)
    p, n = m.p, m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-red.entries[i][f]) % p
        vecs.append(v)
    return Subspace.span(vecs, p, n)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _same_space(u, v)
    return Subspace.span(u.basis + v.basis, u.p, u.ambient_dim)


def annihilator(u: Subspace) -> Subspace:
    """Vectors orthogonal to u under the standard dot product."""
    if u.dim == 0:
        return Subspace.full(u.ambient_dim, u.p)
    return kernel(u.matrix())


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """u ∩ v as the annihilator of ann(u) + ann(v)."""
    _same_space(u, v)
    return annihilator(subspace_sum(annihilator(u), annihilator(v)))


def contains(u: Subspace, v: Subspace) -> bool:
    """True when v is a subspace of u."""
    _same_space(u, v)
    if v.dim > u.dim:
        return False
    return all(u.contains_vector(r) for r in v.basis)


@lru_cache(maxsize=None)
def gaussian_binomial(d: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of GF(p)^d."""
    if not 0 <= k <= d:
        raise ValueError(f"k={k} out of range for d={d}")
    num = den = 1
    for i in range(k):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def subspace_count(d: int, p: int) -> int:
    return sum(gaussian_binomial(d, k, p) for k in range(d + 1))


def pivot_patterns(d: int, dims: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Disjoint partitions of the subspace lattice, in enumeration order.

    Each pattern is a tuple of pivot columns; its subspaces are those whose
    RREF basis has exactly these pivots.
    """
    ks = range(d + 1) if dims is None else sorted(set(dims))
    return [c for k in ks for c in itertools.combinations(range(d), k)]


def free_columns(pivots: Sequence[int], d: int) -> list[list[int]]:
    """Per basis row, the columns whose entries are unconstrained in RREF."""
    ps = set(pivots)
    return [[j for j in range(c + 1, d) if j not in ps] for c in pivots]


def pattern_size(pivots: Sequence[int], d: int, p: int) -> int:
    return p ** sum(len(f) for f in free_columns(pivots, d))


def enumerate_pattern(pivots: Sequence[int], d: int, p: int) -> Iterator[Subspace]:
    """All subspaces with the given pivot columns, free entries in lexicographic order."""
    piv = tuple(pivots)
    frees = free_columns(piv, d)
    slots = [(r, j) for r, f in enumerate(frees) for j in f]
    for vals in itertools.product(range(p), repeat=len(slots)):
        rows = [[0] * d for _ in piv]
        for r, c in enumerate(piv):
            rows[r][c] = 1
        for (r, j), x in zip(slots, vals):
            rows[r][j] = x
        yield Subspace(p, d, tuple(tuple(r) for r in rows), piv)


def enumerate_subspaces(d: int, p: int, dim_filter: Iterable[int] | int | None = None) -> Iterator[Subspace]:
    """Every subspace of GF(p)^d exactly once.

    Order: dimension ascending, then pivot pattern (lexicographic), then free
    entries (lexicographic, first row most significant).
    """
    check_prime(p)
    if d < 0:
        raise ValueError("negative dimension")
    if isinstance(dim_filter, int):
        dim_filter = [dim_filter]
    for piv in pivot_patterns(d, dim_filter):
        yield from enumerate_pattern(piv, d, p)


def hyperplanes_of(u: Subspace) -> list[Subspace]:
    """All codimension-1 subspaces of u."""
    if u.dim == 0:
        return []
    out = []
    # each hyperplane is the kernel of a nonzero functional on u, up to scaling
    for phi in enumerate_subspaces(u.dim, u.p, 1):
        coeffs = phi.basis[0]
        # vectors of u whose coordinate vector (in u.basis) is orthogonal to coeffs
        ker = kernel(FieldMatrix(u.p, 1, u.dim, (coeffs,)))
        vecs = []
        for c in ker.basis:
            v = [0] * u.ambient_dim
            for a, row in zip(c, u.basis):
                for j in range(u.ambient_dim):
                    v[j] = (v[j] + a * row[j]) % u.p
            vecs.append(v)
        out.append(Subspace.span(vecs, u.p, u.ambient_dim))
    return out


def extensions_of(u: Subspace) -> list[Subspace]:
    """All subspaces containing u with one more dimension."""
    d, p = u.ambient_dim, u.p
    if u.dim == d:
        return []
    # complement coordinates: non-pivot columns give a basis of V/u
    comp = [c for c in range(d) if c not in set(u.pivots)]
    out = []
    for line in enumerate_subspaces(len(comp), p, 1):
        v = [0] * d
        for c, x in zip(comp, line.basis[0]):
            v[c] = x
        out.append(Subspace.span(u.basis + (tuple(v),), p, d))
    return out
