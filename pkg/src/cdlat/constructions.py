"""Builders for the double diamond group and the diamond / quasiantichain extensions.

Every builder returns the presentation together with the lattice it is
predicted to have (``ExpectedLattice``), so the engine can confirm or refute
the prediction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .gfplin import Subspace, subspace_sum, contains
from .presentation import (
    CentralPresentation,
    NamedSubgroup,
    centralizer,
    make_presentation,
    measure,
    radical,
    validate,
)
from .shapes import Poset, ShapeSpec, classify, components


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionParams:
    p: int
    m: int | None = None
    n: int | None = None
    l: int = 1
    split: tuple[int, int] | None = None


@dataclass
class ExpectedLattice:
    members: list[NamedSubgroup]
    expected_shape: ShapeSpec
    base_window: tuple[str, str] | None = None
    params: ConstructionParams | None = field(default=None, compare=False)

    def spaces(self) -> list[Subspace]:
        return [x.space for x in self.members]

    def by_name(self, name: str) -> Subspace:
        for x in self.members:
            if x.name == name:
                return x.space
        raise KeyError(name)

    def names(self) -> dict[Subspace, str]:
        return {x.space: x.name for x in self.members}

    def poset(self) -> Poset:
        spaces = sorted(self.spaces(), key=Subspace.sort_key)
        return lattice_poset(spaces)


def lattice_poset(spaces: Sequence[Subspace]) -> Poset:
    """Cover poset of distinct subspaces (index order preserved)."""
    n = len(spaces)
    cov = []
    for i in range(n):
        for j in range(n):
            if i == j or spaces[j].dim >= spaces[i].dim or not contains(spaces[i], spaces[j]):
                continue
            if not any(
                k not in (i, j)
                and spaces[j].dim < spaces[k].dim < spaces[i].dim
                and contains(spaces[k], spaces[j])
                and contains(spaces[i], spaces[k])
                for k in range(n)
            ):
                cov.append((i, j))
    return Poset(n, tuple(cov), tuple(s.dim for s in spaces))


def _dedupe(named: list[NamedSubgroup]) -> list[NamedSubgroup]:
    seen: set[Subspace] = set()
    out = []
    for x in named:
        if x.space not in seen:
            seen.add(x.space)
            out.append(x)
    return out


def _idx(i: int, j: int, k: int | None = None) -> str:
    parts = [i, j] if k is None else [i, j, k]
    if all(x < 10 for x in parts):
        return "".join(map(str, parts))
    return "_".join(map(str, parts))


def _fresh(label: str, taken: set[str]) -> str:
    while label in taken:
        label += "'"
    return label


# --- the 2-string of 2-diamonds ---------------------------------------------


def build_double_diamond(p: int, m: int, split: tuple[int, int] | None = None):
    """Group on a_1..a_2m, b_1..b_2m whose lattice is a 2-string of 2-diamonds.

    Without ``split`` the a/b links join opposite parities.  With
    ``split=(n1, n2)`` the indices are cut into blocks 1..n1 and n1+1..2m and
    a_i, b_j fail to commute exactly when i, j lie in the same block, so that
    C(A_1) = A B_2 and C(A_2) = A B_1.
    """
    if m <= 1:
        raise ConstructionError("m > 1 required")
    t = 2 * m
    if split is None:
        cls = [0 if i % 2 == 1 else 1 for i in range(1, t + 1)]  # odd indices -> class 0
        linked = lambda i, j: cls[i] != cls[j]  # noqa: E731
    else:
        n1, n2 = split
        if n1 < 2 or n2 < 2 or n1 + n2 != t:
            raise ConstructionError(f"split must be two parts of size at least 2 summing to 2m = {t}")
        cls = [0 if i < n1 else 1 for i in range(t)]
        linked = lambda i, j: cls[i] == cls[j]  # noqa: E731
    v_labels = [f"a{i}" for i in range(1, t + 1)] + [f"b{i}" for i in range(1, t + 1)]
    w_labels: list[str] = []
    rel: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(t):
        for j in range(t):
            if linked(i, j):
                rel[(i, t + j)] = {len(w_labels): 1}
                w_labels.append(f"z_a{i + 1}b{j + 1}")
    for i in range(t):
        for j in range(i + 1, t):
            rel[(t + i, t + j)] = {len(w_labels): 1}
            w_labels.append(f"z_b{i + 1}b{j + 1}")
    pres = validate(make_presentation(p, v_labels, w_labels, rel))

    a1 = [f"a{i + 1}" for i in range(t) if cls[i] == 0]
    a2 = [f"a{i + 1}" for i in range(t) if cls[i] == 1]
    b1 = [f"b{i + 1}" for i in range(t) if cls[i] == 0]
    b2 = [f"b{i + 1}" for i in range(t) if cls[i] == 1]
    A = pres.span_labels(a1 + a2)
    if split is None:
        ab1, ab2 = subspace_sum(A, pres.span_labels(b1)), subspace_sum(A, pres.span_labels(b2))
    else:
        ab1, ab2 = subspace_sum(A, pres.span_labels(b2)), subspace_sum(A, pres.span_labels(b1))
    members = [
        NamedSubgroup("ZP", pres.zero()),
        NamedSubgroup("A_1", pres.span_labels(a1)),
        NamedSubgroup("A_2", pres.span_labels(a2)),
        NamedSubgroup("A", A),
        NamedSubgroup("AB_1", ab1),
        NamedSubgroup("AB_2", ab2),
        NamedSubgroup("P", pres.full()),
    ]
    n1, n2 = len(a1), len(a2)
    m1, m2 = ab1.dim - A.dim, ab2.dim - A.dim
    shape = ShapeSpec.predicted(
        [("diamond", 2, 4, [n1, n2, n2, n1]), ("diamond", 2, 4, [m1, m2, m2, m1])]
    )
    return pres, ExpectedLattice(members, shape, None, ConstructionParams(p, m, split=split))


def double_diamond_orders(m: int) -> tuple[int, int]:
    """(log_p |P|, log_p |Z(P)|) from the closed forms."""
    return 4 * m * m + 3 * m, 4 * m * m - m


# --- base certificates ------------------------------------------------------


def _certificate(base: CentralPresentation, cert) -> list[NamedSubgroup]:
    """Normalize a CD certificate (ExpectedLattice, CDLattice or None) and check it."""
    if cert is None:
        from .cdengine import compute_cd_full

        cert = compute_cd_full(base)[0]
    if isinstance(cert, ExpectedLattice):
        named = list(cert.members)
    else:
        named = [NamedSubgroup(cert.names.get(i, f"N{i}"), s) for i, s in enumerate(cert.members)]
    full = base.full()
    if full not in {x.space for x in named}:
        raise ConstructionError("base certificate does not contain the whole group (need N in CD(N))")
    top = measure(base, full).value
    for x in named:
        if measure(base, x.space).value != top:
            raise ConstructionError(f"certificate member {x.name} does not attain m(N)")
    if radical(base).dim:
        raise ConstructionError("base form is degenerate; noncentral generators must span N/Z(N)")
    return named


def _base_shape_parts(named: list[NamedSubgroup]):
    spaces = sorted({x.space for x in named}, key=Subspace.sort_key)
    poset = lattice_poset(spaces)
    if len(spaces) == 1:
        return []
    return [(c.kind, c.param, c.element_count, c.edge_index_profile) for c in components(poset)]


def _embed(u: Subspace, offset: int, d: int) -> list[tuple[int, ...]]:
    return [(0,) * offset + r + (0,) * (d - offset - u.ambient_dim) for r in u.basis]


# --- diamond extension ------------------------------------------------------


def extend_diamond(base: CentralPresentation, m: int, n: int, certificate=None):
    """Adjoin m-diamonds below and above CD(base).

    Coordinates: base generators, then a_ij, then b_ij (i <= m, j <= n).
    Central coordinates: base center, then z_ijk, then zt_ijt, then zB_u_v.
    """
    if m < 1 or n < 2:
        raise ConstructionError("m >= 1 and n >= 2 required")
    named = _certificate(base, certificate)
    p, r = base.p, base.v_dim
    taken = set(base.v_labels) | set(base.w_labels)
    a_lab = {(i, j): _fresh(f"a{_idx(i, j)}", taken) for i in range(1, m + 1) for j in range(1, n + 1)}
    taken |= set(a_lab.values())
    b_lab = {(i, j): _fresh(f"b{_idx(i, j)}", taken) for i in range(1, m + 1) for j in range(1, n + 1)}
    taken |= set(b_lab.values())
    pairs = sorted(a_lab)
    v_labels = list(base.v_labels) + [a_lab[x] for x in pairs] + [b_lab[x] for x in pairs]
    d = len(v_labels)
    vi = {lab: k for k, lab in enumerate(v_labels)}

    w_labels = list(base.w_labels)
    rel: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(r):
        for j in range(i + 1, r):
            c = base.comm[i][j]
            if any(c):
                rel[(i, j)] = {w: x for w, x in enumerate(c) if x}

    def new_central(label: str) -> int:
        lab = _fresh(label, taken)
        taken.add(lab)
        w_labels.append(lab)
        return len(w_labels) - 1

    for i, j in pairs:
        for k in range(1, r + 1):
            w = new_central(f"z_{_idx(i, j, k)}")
            rel[(k - 1, vi[b_lab[(i, j)]])] = {w: 1}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for t in range(1, m + 1):
                w = new_central(f"zt_{_idx(i, j, t)}")
                rel[(vi[a_lab[(t, i)]], vi[b_lab[(t, j)]])] = {w: 1}
    for u, v in itertools.combinations(pairs, 2):
        w = new_central(f"zB_{_idx(*u)}_{_idx(*v)}")
        rel[(vi[b_lab[u]], vi[b_lab[v]])] = {w: 1}
    pres = validate(make_presentation(p, v_labels, w_labels, rel))

    a_all = pres.span_labels(a_lab.values())
    ntilde = subspace_sum(a_all, pres.span_labels(base.v_labels))
    members: list[NamedSubgroup] = []
    omega = range(1, m + 1)
    for k in range(m + 1):
        for delta in itertools.combinations(omega, k):
            space = pres.span_labels(a_lab[(i, j)] for i in delta for j in range(1, n + 1))
            if k == 0:
                name = "ZP"
            elif k == m:
                name = "Atilde"
            else:
                name = "A_Delta{" + ",".join(map(str, delta)) + "}"
            members.append(NamedSubgroup(name, space))
    members.append(NamedSubgroup("Ntilde", ntilde))
    for x in named:
        emb = pres.span(_embed(x.space, 0, d))
        members.append(NamedSubgroup(f"N:{x.name}", subspace_sum(emb, a_all)))
    for k in range(m + 1):
        for delta in itertools.combinations(omega, k):
            rest = [i for i in omega if i not in delta]
            space = subspace_sum(ntilde, pres.span_labels(b_lab[(i, j)] for i in rest for j in range(1, n + 1)))
            if k == 0:
                name = "P"
            elif k == m:
                name = "Ntilde"
            else:
                name = "B_Delta{" + ",".join(map(str, delta)) + "}"
            members.append(NamedSubgroup(name, space))
    members = _dedupe(members)

    cube = [n] * (m * 2 ** (m - 1))
    parts = [("diamond", m, 2**m, cube)] + _base_shape_parts(named) + [("diamond", m, 2**m, cube)]
    shape = ShapeSpec.predicted(parts)
    return pres, ExpectedLattice(members, shape, ("Atilde", "Ntilde"), ConstructionParams(p, m, n))


def extend_diamond_orders(m: int, n: int, r: int, z: int) -> tuple[int, int]:
    """(log_p |P/Z(P)|, log_p |Z(P)|) from the closed forms."""
    return 2 * m * n + r, (m * n * (2 * n + 2 * r + m * n - 1)) // 2 + z


# --- quasiantichain extension -----------------------------------------------


def extend_qac(base: CentralPresentation, n: int, certificate=None):
    """Adjoin quasiantichains of width p+1 below and above CD(base).

    The a/b links are glued: [a_1i, b_1j] = [a_2i, b_2j] = z_ij.
    """
    if n < 2:
        raise ConstructionError("n >= 2 required")
    named = _certificate(base, certificate)
    p, r = base.p, base.v_dim
    taken = set(base.v_labels) | set(base.w_labels)
    pairs = [(i, j) for i in (1, 2) for j in range(1, n + 1)]
    a_lab = {x: _fresh(f"a{_idx(*x)}", taken) for x in pairs}
    taken |= set(a_lab.values())
    b_lab = {x: _fresh(f"b{_idx(*x)}", taken) for x in pairs}
    taken |= set(b_lab.values())
    v_labels = list(base.v_labels) + [a_lab[x] for x in pairs] + [b_lab[x] for x in pairs]
    d = len(v_labels)
    vi = {lab: k for k, lab in enumerate(v_labels)}

    w_labels = list(base.w_labels)
    rel: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(r):
        for j in range(i + 1, r):
            c = base.comm[i][j]
            if any(c):
                rel[(i, j)] = {w: x for w, x in enumerate(c) if x}

    def new_central(label: str) -> int:
        lab = _fresh(label, taken)
        taken.add(lab)
        w_labels.append(lab)
        return len(w_labels) - 1

    for i, j in pairs:
        for k in range(1, r + 1):
            w = new_central(f"z_{_idx(i, j, k)}")
            rel[(k - 1, vi[b_lab[(i, j)]])] = {w: 1}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            w = new_central(f"zA_{_idx(i, j)}")
            for t in (1, 2):
                rel[(vi[a_lab[(t, i)]], vi[b_lab[(t, j)]])] = {w: 1}
    for u, v in itertools.combinations(pairs, 2):
        w = new_central(f"zB_{_idx(*u)}_{_idx(*v)}")
        rel[(vi[b_lab[u]], vi[b_lab[v]])] = {w: 1}
    pres = validate(make_presentation(p, v_labels, w_labels, rel))

    a_all = pres.span_labels(a_lab.values())
    ntilde = subspace_sum(a_all, pres.span_labels(base.v_labels))
    members = [NamedSubgroup("ZP", pres.zero())]
    for k in range(p + 1):
        members.append(NamedSubgroup(f"A_k={k}", qac_a(pres, n, k)))
    members.append(NamedSubgroup("Atilde", a_all))
    members.append(NamedSubgroup("Ntilde", ntilde))
    for x in named:
        emb = pres.span(_embed(x.space, 0, d))
        members.append(NamedSubgroup(f"N:{x.name}", subspace_sum(emb, a_all)))
    for k in range(p + 1):
        members.append(NamedSubgroup(f"C(A_k={k})", subspace_sum(ntilde, qac_centralizer_b(pres, n, k))))
    members.append(NamedSubgroup("P", pres.full()))
    members = _dedupe(members)

    q = ("qac", p + 1, p + 3, [n] * (2 * (p + 1)))
    shape = ShapeSpec.predicted([q] + _base_shape_parts(named) + [q])
    return pres, ExpectedLattice(members, shape, ("Atilde", "Ntilde"), ConstructionParams(p, n=n))


def _qac_label(pres: CentralPresentation, letter: str, i: int, j: int) -> str:
    # labels may carry primes after iteration; the last 4n coordinates are a's then b's
    n = (pres.v_dim - _base_dim(pres)) // 4
    offset = _base_dim(pres) + (0 if letter == "a" else 2 * n)
    return pres.v_labels[offset + (i - 1) * n + (j - 1)]


def _base_dim(pres: CentralPresentation) -> int:
    # base coordinates are the ones before the a11-style label of the last extension
    labels = pres.v_labels
    for k in range(len(labels) - 1, -1, -1):
        if labels[k].rstrip("'") in ("a11", "a1_1"):
            return k
    raise ConstructionError("presentation does not come from extend_qac")


def qac_a(pres: CentralPresentation, n: int, k: int) -> Subspace:
    """A_k = <a_1j a_2j^k> for 0 <= k < p, A_p = <a_2j>."""
    p, d = pres.p, pres.v_dim
    vecs = []
    for j in range(1, n + 1):
        v = [0] * d
        if k < p:
            v[pres.index(_qac_label(pres, "a", 1, j))] = 1
            v[pres.index(_qac_label(pres, "a", 2, j))] = k % p
        else:
            v[pres.index(_qac_label(pres, "a", 2, j))] = 1
        vecs.append(v)
    return pres.span(vecs)


def qac_centralizer_b(pres: CentralPresentation, n: int, k: int) -> Subspace:
    """b-part of C(A_k): <b_2j> for k=0, <b_1j> for k=p, else <b_1j^k b_2j^-1>."""
    p, d = pres.p, pres.v_dim
    vecs = []
    for j in range(1, n + 1):
        v = [0] * d
        b1, b2 = pres.index(_qac_label(pres, "b", 1, j)), pres.index(_qac_label(pres, "b", 2, j))
        if k == 0:
            v[b2] = 1
        elif k == p:
            v[b1] = 1
        else:
            v[b1], v[b2] = k % p, (-1) % p
        vecs.append(v)
    return pres.span(vecs)


def qac_ntilde(pres: CentralPresentation, n: int) -> Subspace:
    """Base generators together with all a_tj."""
    return Subspace.coordinate(range(_base_dim(pres) + 2 * n), pres.v_dim, pres.p)


def extend_qac_orders(n: int, r: int, z: int) -> tuple[int, int]:
    """(log_p |P/Z(P)|, log_p |Z(P)|) counted from the generator lists."""
    return 4 * n + r, 2 * n * r + n * n + n * (2 * n - 1) + z


# --- iteration and powers ---------------------------------------------------

Builder = Callable[..., tuple[CentralPresentation, ExpectedLattice]]


def iterate(builder: Builder, base: CentralPresentation, l: int, certificate=None):
    """Apply ``builder(base, certificate=...)`` l times, threading each result on."""
    if l < 1:
        raise ConstructionError("l >= 1 required")
    pres, cert = base, certificate
    for _ in range(l):
        pres, cert = builder(pres, certificate=cert)
    return pres, cert


def diamond_builder(m: int, n: int) -> Builder:
    def build(base, certificate=None):
        return extend_diamond(base, m, n, certificate)

    build.__name__ = f"extend_diamond(m={m}, n={n})"
    return build


def qac_builder(n: int) -> Builder:
    def build(base, certificate=None):
        return extend_qac(base, n, certificate)

    build.__name__ = f"extend_qac(n={n})"
    return build


def direct_power(base: CentralPresentation, k: int) -> CentralPresentation:
    from .presentation import direct_product

    if k < 1:
        raise ConstructionError("k >= 1 required")
    out = base
    for _ in range(k - 1):
        out = direct_product(out, base)
    return out


def expected_centralizers_agree(pres: CentralPresentation, exp: ExpectedLattice) -> bool:
    spaces = set(exp.spaces())
    return all(centralizer(pres, s) in spaces for s in spaces)


__all__ = [
    "ConstructionError",
    "ConstructionParams",
    "ExpectedLattice",
    "build_double_diamond",
    "diamond_builder",
    "direct_power",
    "double_diamond_orders",
    "extend_diamond",
    "extend_diamond_orders",
    "extend_qac",
    "extend_qac_orders",
    "iterate",
    "lattice_poset",
    "qac_a",
    "qac_builder",
    "qac_centralizer_b",
    "qac_ntilde",
]
