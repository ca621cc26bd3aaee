from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from cdlat.gfplin import Subspace
from cdlat.oracle import (
    ELEMENT_BUDGET,
    OracleBudgetExceeded,
    commutator,
    element,
    element_centralizer,
    generator,
    identity,
    inverse,
    multiply,
    power,
)
from cdlat.presentation import centralizer, heisenberg, make_presentation, measure

from conftest import SMALL


def truncated():
    # four generators, three central letters, one pair left commuting
    rel = {(0, 1): {0: 1}, (0, 2): {1: 1}, (1, 3): {2: 1}, (2, 3): {0: 1, 2: 1}}
    return make_presentation(2, ["a", "b", "c", "d"], ["z1", "z2", "z3"], rel)


def random_element(rnd, pres):
    return element(pres, [rnd.randrange(pres.p) for _ in range(pres.v_dim)], [rnd.randrange(pres.p) for _ in range(pres.w_dim)])


SMALL_ENOUGH = sorted(n for n, g in SMALL.items() if g.p ** (g.v_dim + g.w_dim) <= ELEMENT_BUDGET)


def test_identity_and_heisenberg_relations():
    h = heisenberg(2)
    x, y, z = (generator(h, s) for s in "xyz")
    e = identity(h)
    assert multiply(h, e, x) == x == multiply(h, x, e)
    assert commutator(h, x, y) == z
    assert power(h, multiply(h, x, y), 2) == z
    assert power(h, x, 2) == e


@pytest.mark.parametrize("p", [2, 3, 5])
def test_commutator_is_the_form(p):
    h = heisenberg(p)
    x, y, z = (generator(h, s) for s in "xyz")
    assert commutator(h, x, y) == z
    assert commutator(h, y, x) == power(h, z, p - 1)


@pytest.mark.parametrize("name", SMALL_ENOUGH)
def test_group_axioms(name):
    pres = SMALL[name]
    rnd = random.Random(name)
    for _ in range(100):
        a, b, c = (random_element(rnd, pres) for _ in range(3))
        assert multiply(pres, multiply(pres, a, b), c) == multiply(pres, a, multiply(pres, b, c))
        assert multiply(pres, a, inverse(pres, a)) == identity(pres)
        assert power(pres, a, pres.p * pres.p) == identity(pres)
        # the commutator lies in the centre and equals the form value
        com = commutator(pres, a, b)
        assert com.v_part == (0,) * pres.v_dim
        assert list(com.w_part) == [x % pres.p for x in pres.bracket(a.v_part, b.v_part)]


@given(st.randoms(use_true_random=False))
def test_commutator_bilinear(rnd):
    pres = truncated()
    a, b, c = (random_element(rnd, pres) for _ in range(3))
    left = commutator(pres, multiply(pres, a, b), c)
    right = multiply(pres, commutator(pres, a, c), commutator(pres, b, c))
    assert left == right


def test_centralizer_examples():
    h = heisenberg(2)
    whole = element_centralizer(h, [])
    assert whole.size == 8 and whole.projection == h.full()
    cx = element_centralizer(h, [generator(h, "x")])
    assert cx.size == 4 and cx.projection == h.span_labels(["x"])
    t = truncated()
    ca = element_centralizer(t, [generator(t, "a")])
    assert ca.projection == t.span_labels(["a", "d"])
    assert ca.size == 2 ** (3 + 2)


def lifts(pres, u):
    return [element(pres, row) for row in u.basis]


@pytest.mark.parametrize("name", SMALL_ENOUGH + ["truncated"])
def test_agrees_with_subspace_centralizer(name):
    pres = truncated() if name == "truncated" else SMALL[name]
    rnd = random.Random(name)
    for _ in range(200):
        k = rnd.randrange(pres.v_dim + 1)
        u = Subspace.span([[rnd.randrange(pres.p) for _ in range(pres.v_dim)] for _ in range(k)], pres.p, pres.v_dim)
        got = element_centralizer(pres, lifts(pres, u))
        c = centralizer(pres, u)
        assert got.projection == c
        assert got.size == pres.p ** (pres.w_dim + c.dim)
        assert got.size == pres.p ** measure(pres, u).c_exp


def test_budget():
    big = make_presentation(2, [f"g{i}" for i in range(8)], [f"z{i}" for i in range(7)], {})
    with pytest.raises(OracleBudgetExceeded):
        element_centralizer(big, [])
