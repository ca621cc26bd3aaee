"""Shape taxonomy for finite lattices given by cover relations.

A lattice is cut at its spine (the elements comparable to everything); each
interval between consecutive spine elements is a component, classified as a
diamond (Boolean lattice), a quasiantichain, a chain, or ``other``.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    """Finite poset from covers ``(upper, lower)``; ``dims`` give log_p orders."""

    size: int
    covers: tuple[tuple[int, int], ...]
    dims: tuple[int, ...] | None = None

    def __post_init__(self):
        below = [set() for _ in range(self.size)]
        for hi, lo in self.covers:
            below[hi].add(lo)
        # reflexive-transitive closure, elements are few
        order = self._topological(below)
        down = [set([i]) for i in range(self.size)]
        for x in order:
            for y in below[x]:
                down[x] |= down[y]
        object.__setattr__(self, "_down", tuple(frozenset(s) for s in down))

    def _topological(self, below):
        seen, out = set(), []

        def visit(x):
            stack = [(x, iter(sorted(below[x])))]
            seen.add(x)
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    out.append(node)
                    stack.pop()
                elif nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, iter(sorted(below[nxt]))))

        for x in range(self.size):
            if x not in seen:
                visit(x)
        return out

    def leq(self, a: int, b: int) -> bool:
        return a in self._down[b]  # type: ignore[attr-defined]

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def minima(self) -> list[int]:
        return [x for x in range(self.size) if all(not self.leq(y, x) or y == x for y in range(self.size))]

    def maxima(self) -> list[int]:
        return [x for x in range(self.size) if all(not self.leq(x, y) or y == x for y in range(self.size))]

    def interval(self, lo: int, hi: int) -> list[int]:
        return [x for x in range(self.size) if self.leq(lo, x) and self.leq(x, hi)]

    def restrict(self, elems: Sequence[int]) -> tuple["Poset", list[int]]:
        idx = {x: i for i, x in enumerate(elems)}
        cov = tuple((idx[h], idx[l]) for h, l in self.covers if h in idx and l in idx)
        dims = tuple(self.dims[x] for x in elems) if self.dims is not None else None
        return Poset(len(elems), cov, dims), list(elems)


# --- canonical form ---------------------------------------------------------


def _refine(n, ups, downs, colors):
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in ups[v])), tuple(sorted(colors[u] for u in downs[v])))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(n: int, covers: Iterable[tuple[int, int]]) -> tuple:
    """Label-independent encoding of a cover digraph (exact, by individualization-refinement)."""
    covers = list(covers)
    ups = [[] for _ in range(n)]
    downs = [[] for _ in range(n)]
    for hi, lo in covers:
        ups[lo].append(hi)
        downs[hi].append(lo)
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(n, ups, downs, colors)
        counts = Counter(colors)
        cell = min((c for c, k in counts.items() if k > 1), default=None)
        if cell is None:
            code = tuple(sorted((colors[h], colors[l]) for h, l in covers))
            if best is None or code < best:
                best = code
            return
        for v in [x for x in range(n) if colors[x] == cell]:
            # individualize v: shift everything at or above the cell by one
            nc = [c * 2 + (0 if x == v or c != cell else 1) for x, c in enumerate(colors)]
            search(nc)

    search([0] * n)
    return (n, best or ())


def fingerprint(n: int, covers: Iterable[tuple[int, int]]) -> str:
    return hashlib.sha1(repr(canonical_form(n, covers)).encode()).hexdigest()[:10]


# --- components -------------------------------------------------------------


@dataclass(frozen=True)
class ComponentSpec:
    kind: str  # point | diamond | qac | chain | other
    param: int | str
    element_count: int
    endpoints: tuple[int, int] | None = None
    edge_index_profile: tuple[int, ...] = ()
    canonical: tuple = field(default=(), compare=False, repr=False)

    @property
    def label(self) -> str:
        if self.kind == "point":
            return "point"
        return f"{self.kind}({self.param})"

    def same_shape(self, other: "ComponentSpec") -> bool:
        if self.kind != other.kind or self.param != other.param:
            return False
        if self.kind == "other" and self.canonical and other.canonical:
            return self.canonical == other.canonical
        return True


def _is_boolean(sub: Poset, lo: int, hi: int) -> int | None:
    """Rank m when the interval is the Boolean lattice on its atoms, else None."""
    n = sub.size
    atoms = [x for x in range(n) if x != lo and all(y in (lo, x) or not sub.leq(y, x) for y in range(n))]
    m = len(atoms)
    if n != 2**m:
        return None
    image = {}
    for x in range(n):
        key = frozenset(a for a in atoms if sub.leq(a, x))
        if key in image:
            return None
        image[x] = key
    for x in range(n):
        for y in range(n):
            if sub.leq(x, y) != (image[x] <= image[y]):
                return None
    return m


def classify_component(sub: Poset, lo: int, hi: int, endpoints=None) -> ComponentSpec:
    """Classify an interval poset with least element ``lo`` and greatest ``hi``."""
    n = sub.size
    profile: tuple[int, ...] = ()
    if sub.dims is not None:
        profile = tuple(sorted(sub.dims[h] - sub.dims[l] for h, l in sub.covers))
    if n == 1:
        return ComponentSpec("point", 0, 1, endpoints, profile)
    m = _is_boolean(sub, lo, hi)
    if m is not None:
        return ComponentSpec("diamond", m, n, endpoints, profile)
    if all(sub.comparable(x, y) for x in range(n) for y in range(n)):
        return ComponentSpec("chain", n - 1, n, endpoints, profile)
    middle = [x for x in range(n) if x not in (lo, hi)]
    if len(middle) >= 2 and all(not sub.comparable(x, y) for x in middle for y in middle if x != y):
        return ComponentSpec("qac", len(middle), n, endpoints, profile)
    canon = canonical_form(n, sub.covers)
    fp = hashlib.sha1(repr(canon).encode()).hexdigest()[:10]
    return ComponentSpec("other", fp, n, endpoints, profile, canon)


@dataclass(frozen=True)
class ShapeSpec:
    components: tuple[ComponentSpec, ...]
    uniform: bool
    index_uniform: bool

    @property
    def kind(self) -> str:
        return "string" if len(self.components) > 1 else "single-component"

    @property
    def length(self) -> int:
        return len(self.components)

    def labels(self) -> list[str]:
        return [c.label for c in self.components]

    def indices(self) -> list[int]:
        return sorted({x for c in self.components for x in c.edge_index_profile})

    def summary(self) -> str:
        if len(self.components) == 1 and self.components[0].kind == "point":
            return "point"
        idx = self.indices()
        if not idx:
            itxt = ""
        elif len(idx) == 1:
            itxt = f" idx=p^{idx[0]}"
        else:
            itxt = " idx=mixed(" + ",".join(f"p^{x}" for x in idx) + ")"
        if len(self.components) == 1:
            return self.components[0].label + itxt
        body = ",".join(self.labels())
        return f"{len(self.components)}-string[{body}] {'uniform' if self.uniform else 'mixed'}{itxt}"

    def matches(self, expected: str) -> bool:
        """Compare with a summary string; the idx clause is optional in ``expected``."""
        got = self.summary()
        if " idx=" not in expected:
            got = got.split(" idx=")[0]
        return got.strip() == expected.strip()

    @classmethod
    def from_components(cls, comps: Sequence[ComponentSpec]) -> "ShapeSpec":
        comps = tuple(comps)
        uniform = all(comps[0].same_shape(c) for c in comps[1:]) if comps else True
        profiles = {c.edge_index_profile for c in comps if c.kind != "point"}
        index_uniform = len({x for prof in profiles for x in prof}) <= 1
        return cls(comps, uniform, index_uniform)

    @classmethod
    def predicted(cls, parts: Sequence[tuple[str, int | str, int, Sequence[int]]]) -> "ShapeSpec":
        """Shape from ``(kind, param, element_count, cover indices)`` tuples."""
        comps = [ComponentSpec(k, prm, cnt, None, tuple(sorted(idx))) for k, prm, cnt, idx in parts]
        return cls.from_components(comps)

    def same_as(self, other: "ShapeSpec") -> bool:
        """Equal component sequence and per-component index profiles."""
        if len(self.components) != len(other.components):
            return False
        return all(
            a.same_shape(b) and a.edge_index_profile == b.edge_index_profile
            for a, b in zip(self.components, other.components)
        )


def spine(poset: Poset) -> list[int]:
    """Elements comparable to every element, sorted bottom to top."""
    if poset.size == 0:
        raise ShapeError("empty lattice")
    lo, hi = poset.minima(), poset.maxima()
    if len(lo) != 1 or len(hi) != 1:
        raise ShapeError("lattice needs a unique minimum and maximum")
    sp = [x for x in range(poset.size) if all(poset.comparable(x, y) for y in range(poset.size))]
    return sorted(sp, key=lambda x: len([y for y in range(poset.size) if poset.leq(y, x)]))


def components(poset: Poset) -> list[ComponentSpec]:
    sp = spine(poset)
    if len(sp) == 1:
        return [ComponentSpec("point", 0, 1, (sp[0], sp[0]))]
    out = []
    for lo, hi in zip(sp, sp[1:]):
        elems = poset.interval(lo, hi)
        sub, back = poset.restrict(elems)
        out.append(classify_component(sub, back.index(lo), back.index(hi), (lo, hi)))
    return out


def classify(poset: Poset) -> ShapeSpec:
    return ShapeSpec.from_components(components(poset))
