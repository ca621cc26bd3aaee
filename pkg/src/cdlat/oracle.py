"""Element-level model of a class-2 group, used only to cross-check the subspace path.

Elements are pairs (v, w) with product
``(v1, w1)(v2, w2) = (v1 + v2, w1 + w2 + beta(v1, v2))`` where
``beta(x, y) = sum_{i>j} x[i] y[j] comm[i][j]``.  With this order the
group commutator g^-1 h^-1 g h equals (0, B(v_g, v_h)).  Nothing here calls the
centralizer or measure code in ``presentation``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gfplin import Subspace
from .presentation import CentralPresentation

ELEMENT_BUDGET = 2**14


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupElement:
    v_part: tuple[int, ...]
    w_part: tuple[int, ...]


def identity(pres: CentralPresentation) -> GroupElement:
    return GroupElement((0,) * pres.v_dim, (0,) * pres.w_dim)


def element(pres: CentralPresentation, v=None, w=None) -> GroupElement:
    p = pres.p
    v = tuple(int(x) % p for x in (v if v is not None else (0,) * pres.v_dim))
    w = tuple(int(x) % p for x in (w if w is not None else (0,) * pres.w_dim))
    if len(v) != pres.v_dim or len(w) != pres.w_dim:
        raise ValueError("element has the wrong shape")
    return GroupElement(v, w)


def generator(pres: CentralPresentation, label: str) -> GroupElement:
    if label in pres.v_labels:
        v = [0] * pres.v_dim
        v[pres.v_labels.index(label)] = 1
        return element(pres, v)
    w = [0] * pres.w_dim
    w[pres.w_labels.index(label)] = 1
    return element(pres, None, w)


def _beta(pres: CentralPresentation, x, y) -> list[int]:
    out = [0] * pres.w_dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j in range(i):
            yj = y[j]
            if yj:
                c = pres.comm[i][j]
                for t in range(pres.w_dim):
                    out[t] += xi * yj * c[t]
    return out


def multiply(pres: CentralPresentation, g: GroupElement, h: GroupElement) -> GroupElement:
    p = pres.p
    b = _beta(pres, g.v_part, h.v_part)
    v = tuple((a + c) % p for a, c in zip(g.v_part, h.v_part))
    w = tuple((a + c + x) % p for a, c, x in zip(g.w_part, h.w_part, b))
    return GroupElement(v, w)


def inverse(pres: CentralPresentation, g: GroupElement) -> GroupElement:
    # (v, w)(-v, w') = (0, w + w' - beta(v, v)), so w' = -w + beta(v, v)
    p = pres.p
    b = _beta(pres, g.v_part, g.v_part)
    return GroupElement(tuple(-a % p for a in g.v_part), tuple((-a + x) % p for a, x in zip(g.w_part, b)))


def power(pres: CentralPresentation, g: GroupElement, k: int) -> GroupElement:
    out = identity(pres)
    for _ in range(k):
        out = multiply(pres, out, g)
    return out


def commutator(pres: CentralPresentation, g: GroupElement, h: GroupElement) -> GroupElement:
    """[g, h] = g^-1 h^-1 g h."""
    return multiply(pres, multiply(pres, inverse(pres, g), inverse(pres, h)), multiply(pres, g, h))


def order_exponent(pres: CentralPresentation) -> int:
    return pres.v_dim + pres.w_dim


def elements(pres: CentralPresentation):
    p = pres.p
    for v in itertools.product(range(p), repeat=pres.v_dim):
        for w in itertools.product(range(p), repeat=pres.w_dim):
            yield GroupElement(v, w)


@dataclass(frozen=True)
class OracleCentralizer:
    size: int
    projection: Subspace


def element_centralizer(pres: CentralPresentation, generators) -> OracleCentralizer:
    """Count elements commuting with every generator (by multiplying both ways)."""
    p = pres.p
    if p ** order_exponent(pres) > ELEMENT_BUDGET:
        raise OracleBudgetExceeded(f"group has {p}^{order_exponent(pres)} elements, oracle budget is {ELEMENT_BUDGET}")
    gens = [g if isinstance(g, GroupElement) else element(pres, g) for g in generators]
    size = 0
    proj: set[tuple[int, ...]] = set()
    for x in elements(pres):
        if all(multiply(pres, x, g) == multiply(pres, g, x) for g in gens):
            size += 1
            proj.add(x.v_part)
    return OracleCentralizer(size, Subspace.span(sorted(proj), p, pres.v_dim))
