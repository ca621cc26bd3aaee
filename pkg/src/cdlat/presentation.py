"""Class-2 p-groups with Frattini subgroup inside the center, as commutator forms.

A :class:`CentralPresentation` stores the alternating bilinear map
``B: V x V -> W`` where ``V = P/Z(P)`` and ``W = Z(P)`` are GF(p)-spaces.
Subgroups containing ``Z(P)`` are subspaces of ``V``; the centralizer of such
a subgroup is the preimage of the orthogonal complement under ``B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .gfplin import FieldMatrix, Subspace, check_prime, kernel

Vec = tuple[int, ...]


class PresentationError(ValueError):
    """An invariant of a presentation is violated."""

    def __init__(self, kind: str, message: str, indices: tuple = ()):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.indices = indices


class CGPParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class CentralPresentation:
    p: int
    v_labels: tuple[str, ...]
    w_labels: tuple[str, ...]
    # comm[i][j] holds the W-coordinates of [g_i, g_j]
    comm: tuple[tuple[Vec, ...], ...]

    @property
    def v_dim(self) -> int:
        return len(self.v_labels)

    @property
    def w_dim(self) -> int:
        return len(self.w_labels)

    @property
    def order_exponent(self) -> int:
        return self.v_dim + self.w_dim

    @cached_property
    def form_tensor(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """F[i][w][j] = comm[i][j][w]: row w of the map v -> B(e_i, v)."""
        d, e = self.v_dim, self.w_dim
        return tuple(
            tuple(tuple(self.comm[i][j][w] for j in range(d)) for w in range(e)) for i in range(d)
        )

    def bracket(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        """B(u, v) in W-coordinates."""
        p, e = self.p, self.w_dim
        out = [0] * e
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.comm[i]
            for j, b in enumerate(v):
                if b:
                    c = row[j]
                    ab = a * b
                    for w in range(e):
                        if c[w]:
                            out[w] += ab * c[w]
        return tuple(x % p for x in out)

    def form_rows(self, u: Sequence[int]) -> list[list[int]]:
        """The e x d matrix of v -> B(u, v)."""
        p, d, e = self.p, self.v_dim, self.w_dim
        rows = [[0] * d for _ in range(e)]
        F = self.form_tensor
        for i, a in enumerate(u):
            if a:
                for w in range(e):
                    src = F[i][w]
                    dst = rows[w]
                    for j in range(d):
                        if src[j]:
                            dst[j] = (dst[j] + a * src[j]) % p
        return rows

    def index(self, label: str) -> int:
        try:
            return self.v_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown generator {label!r}") from None

    def unit(self, label: str) -> Vec:
        i = self.index(label)
        return tuple(int(j == i) for j in range(self.v_dim))

    def span(self, vectors: Iterable[Sequence[int]]) -> Subspace:
        return Subspace.span(vectors, self.p, self.v_dim)

    def span_labels(self, labels: Iterable[str]) -> Subspace:
        return Subspace.coordinate([self.index(x) for x in labels], self.v_dim, self.p)

    def zero(self) -> Subspace:
        return Subspace.zero(self.v_dim, self.p)

    def full(self) -> Subspace:
        return Subspace.full(self.v_dim, self.p)


@dataclass(frozen=True)
class MeasureExponent:
    """log_p of |H| * |C_P(H)|, split into its two factors."""

    h_exp: int
    c_exp: int

    @property
    def value(self) -> int:
        return self.h_exp + self.c_exp


@dataclass(frozen=True)
class NamedSubgroup:
    name: str
    space: Subspace = field(compare=True)


def make_presentation(
    p: int,
    v_labels: Sequence[str],
    w_labels: Sequence[str],
    relations: dict[tuple[int, int], dict[int, int]] | None = None,
) -> CentralPresentation:
    """Assemble an alternating table from ``{(i, j): {w: exponent}}`` with i < j."""
    check_prime(p)
    d, e = len(v_labels), len(w_labels)
    table = [[[0] * e for _ in range(d)] for _ in range(d)]
    for (i, j), coords in (relations or {}).items():
        if i == j:
            raise PresentationError("diagonal", f"[g{i}, g{i}] must be trivial", (i, i))
        for w, x in coords.items():
            table[i][j][w] = x % p
            table[j][i][w] = (-x) % p
    comm = tuple(tuple(tuple(c) for c in row) for row in table)
    return CentralPresentation(p, tuple(v_labels), tuple(w_labels), comm)


def validate(pres: CentralPresentation) -> CentralPresentation:
    """Check the presentation invariants; raise on the first violation."""
    p = pres.p
    try:
        check_prime(p)
    except ValueError as exc:
        raise PresentationError("modulus", str(exc)) from None
    d, e = pres.v_dim, pres.w_dim
    seen = set()
    for lab in pres.v_labels + pres.w_labels:
        if not lab or any(ch.isspace() for ch in lab) or lab in seen:
            raise PresentationError("labels", f"duplicate or malformed label {lab!r}")
        seen.add(lab)
    if len(pres.comm) != d or any(len(row) != d for row in pres.comm):
        raise PresentationError("dimension", f"commutator table is not {d}x{d}")
    for i in range(d):
        for j in range(d):
            c = pres.comm[i][j]
            if len(c) != e or any(not 0 <= x < p for x in c):
                raise PresentationError("dimension", f"entry ({i},{j}) is not a vector in GF({p})^{e}", (i, j))
    for i in range(d):
        if any(pres.comm[i][i]):
            raise PresentationError("diagonal", f"[{pres.v_labels[i]}, {pres.v_labels[i]}] != 1", (i, i))
    for i in range(d):
        for j in range(i + 1, d):
            a, b = pres.comm[i][j], pres.comm[j][i]
            if any((x + y) % p for x, y in zip(a, b)):
                raise PresentationError(
                    "alternating",
                    f"[{pres.v_labels[j]}, {pres.v_labels[i]}] != [{pres.v_labels[i]}, {pres.v_labels[j]}]^-1",
                    (i, j),
                )
    return pres


def _check_space(pres: CentralPresentation, u: Subspace) -> None:
    if u.ambient_dim != pres.v_dim or u.p != pres.p:
        raise PresentationError(
            "dimension", f"subspace of GF({u.p})^{u.ambient_dim} used with a presentation on GF({pres.p})^{pres.v_dim}"
        )


def centralizer(pres: CentralPresentation, u: Subspace) -> Subspace:
    """C_P(H)/Z(P) for H/Z(P) = u, i.e. {v : B(x, v) = 0 for all x in u}."""
    _check_space(pres, u)
    d = pres.v_dim
    rows: list[list[int]] = []
    for b in u.basis:
        rows.extend(pres.form_rows(b))
    if not rows:
        return Subspace.full(d, pres.p)
    return kernel(FieldMatrix.from_rows(rows, pres.p, d))


def radical(pres: CentralPresentation) -> Subspace:
    return centralizer(pres, pres.full())


def measure(pres: CentralPresentation, u: Subspace) -> MeasureExponent:
    c = centralizer(pres, u)
    return MeasureExponent(pres.w_dim + u.dim, pres.w_dim + c.dim)


def direct_product(g1: CentralPresentation, g2: CentralPresentation) -> CentralPresentation:
    """Block-diagonal product on V1+V2 -> W1+W2; labels get ``.1`` / ``.2`` suffixes."""
    if g1.p != g2.p:
        raise PresentationError("modulus", f"cannot multiply groups over GF({g1.p}) and GF({g2.p})")
    d1, d2, e1, e2 = g1.v_dim, g2.v_dim, g1.w_dim, g2.w_dim
    zero = (0,) * (e1 + e2)
    table = []
    for i in range(d1 + d2):
        row = []
        for j in range(d1 + d2):
            if i < d1 and j < d1:
                row.append(g1.comm[i][j] + (0,) * e2)
            elif i >= d1 and j >= d1:
                row.append((0,) * e1 + g2.comm[i - d1][j - d1])
            else:
                row.append(zero)
        table.append(tuple(row))
    return CentralPresentation(
        g1.p,
        tuple(f"{x}.1" for x in g1.v_labels) + tuple(f"{x}.2" for x in g2.v_labels),
        tuple(f"{x}.1" for x in g1.w_labels) + tuple(f"{x}.2" for x in g2.w_labels),
        tuple(table),
    )


def embed_sum(u1: Subspace, u2: Subspace) -> Subspace:
    """U1 + U2 inside V1 + V2 (block coordinates)."""
    if u1.p != u2.p:
        raise PresentationError("modulus", "mismatched fields")
    d1, d2 = u1.ambient_dim, u2.ambient_dim
    rows = [r + (0,) * d2 for r in u1.basis] + [(0,) * d1 + r for r in u2.basis]
    return Subspace.span(rows, u1.p, d1 + d2)


def abelian(p: int, dims: int = 0) -> CentralPresentation:
    """Zero commutator form on GF(p)^dims (dims=0 is the trivial group)."""
    return make_presentation(p, [f"x{i + 1}" for i in range(dims)], [])


def trivial(p: int) -> CentralPresentation:
    return abelian(p, 0)


def heisenberg(p: int) -> CentralPresentation:
    """Extraspecial group of order p^3: [x, y] = z."""
    return make_presentation(p, ["x", "y"], ["z"], {(0, 1): {0: 1}})


# --- CGP text format -------------------------------------------------------

_TERM = re.compile(r"^([^\s\^\*=]+)(?:\^(-?\d+))?$")


def serialize(pres: CentralPresentation) -> str:
    lines = ["cgp 1", f"p {pres.p}"]
    lines.append(" ".join(["noncentral", *pres.v_labels]))
    lines.append(" ".join(["central", *pres.w_labels]))
    d = pres.v_dim
    for i in range(d):
        for j in range(i + 1, d):
            c = pres.comm[i][j]
            terms = []
            for w, x in enumerate(c):
                if x:
                    terms.append(pres.w_labels[w] if x == 1 else f"{pres.w_labels[w]}^{x}")
            if terms:
                lines.append(f"comm {pres.v_labels[i]} {pres.v_labels[j]} = " + " * ".join(terms))
    return "\n".join(lines) + "\n"


def parse(text: str) -> CentralPresentation:
    p = None
    v_labels: list[str] | None = None
    w_labels: list[str] | None = None
    relations: dict[tuple[int, int], dict[int, int]] = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if not header_seen:
            if tok != ["cgp", "1"]:
                raise CGPParseError(lineno, "expected header 'cgp 1'")
            header_seen = True
            continue
        key = tok[0]
        if key == "p":
            if len(tok) != 2 or not tok[1].isdigit():
                raise CGPParseError(lineno, "expected 'p <prime>'")
            p = int(tok[1])
            try:
                check_prime(p)
            except ValueError as exc:
                raise CGPParseError(lineno, str(exc)) from None
        elif key == "noncentral":
            if v_labels is not None:
                raise CGPParseError(lineno, "duplicate 'noncentral' line")
            v_labels = tok[1:]
        elif key == "central":
            if w_labels is not None:
                raise CGPParseError(lineno, "duplicate 'central' line")
            w_labels = tok[1:]
        elif key == "comm":
            if p is None or v_labels is None or w_labels is None:
                raise CGPParseError(lineno, "'comm' before 'p', 'noncentral' and 'central'")
            if len(tok) < 5 or tok[3] != "=":
                raise CGPParseError(lineno, "expected 'comm <gi> <gj> = <terms>'")
            try:
                i, j = v_labels.index(tok[1]), v_labels.index(tok[2])
            except ValueError:
                raise CGPParseError(lineno, f"unknown generator in {tok[1]!r}, {tok[2]!r}") from None
            if i >= j:
                raise CGPParseError(lineno, f"{tok[1]} must be listed before {tok[2]} in 'noncentral'")
            if (i, j) in relations:
                raise CGPParseError(lineno, f"duplicate commutator [{tok[1]}, {tok[2]}]")
            rhs = " ".join(tok[4:]).split("*")
            coords: dict[int, int] = {}
            for term in rhs:
                m = _TERM.match(term.strip())
                if not m:
                    raise CGPParseError(lineno, f"malformed term {term.strip()!r}")
                name, exp = m.group(1), int(m.group(2) or 1)
                if name not in w_labels:
                    raise CGPParseError(lineno, f"unknown central generator {name!r}")
                w = w_labels.index(name)
                coords[w] = (coords.get(w, 0) + exp) % p
            relations[(i, j)] = coords
        elif key == "power":
            raise CGPParseError(lineno, "power maps are not supported in cgp 1 (generators have order p)")
        else:
            raise CGPParseError(lineno, f"unknown directive {key!r}")
    if not header_seen:
        raise CGPParseError(1, "empty document")
    if p is None or v_labels is None or w_labels is None:
        raise CGPParseError(len(text.splitlines()), "missing 'p', 'noncentral' or 'central' line")
    pres = make_presentation(p, v_labels, w_labels, relations)
    return validate(pres)


def load(path) -> CentralPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(pres: CentralPresentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(pres))
