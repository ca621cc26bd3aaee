from __future__ import annotations

import itertools
from math import comb

import pytest

from cdlat.cdengine import check_duality, compute_cd_full
from cdlat.constructions import (
    ConstructionError,
    ExpectedLattice,
    build_double_diamond,
    diamond_builder,
    direct_power,
    double_diamond_orders,
    extend_diamond,
    extend_diamond_orders,
    extend_qac,
    extend_qac_orders,
    iterate,
    qac_a,
    qac_builder,
    qac_centralizer_b,
    qac_ntilde,
)
from cdlat.gfplin import contains, subspace_intersect, subspace_sum
from cdlat.presentation import abelian, heisenberg, measure, trivial, validate


def expected_is_closed(pres, exp: ExpectedLattice):
    spaces = set(exp.spaces())
    vals = {measure(pres, u).value for u in spaces}
    assert vals == {measure(pres, pres.zero()).value}
    for u, v in itertools.product(spaces, repeat=2):
        assert subspace_sum(u, v) in spaces
        assert subspace_intersect(u, v) in spaces
    assert check_duality(pres, exp)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [2, 3])
def test_double_diamond_orders(p, m):
    pres, exp = build_double_diamond(p, m)
    assert (pres.order_exponent, pres.w_dim) == double_diamond_orders(m) == (4 * m * m + 3 * m, 4 * m * m - m)
    assert pres.v_dim == 4 * m
    dims = {x.name: x.space.dim for x in exp.members}
    assert dims == {"ZP": 0, "A_1": m, "A_2": m, "A": 2 * m, "AB_1": 3 * m, "AB_2": 3 * m, "P": 4 * m}


@pytest.mark.parametrize("p", [2, 3])
def test_double_diamond_prediction_is_closed(p):
    expected_is_closed(*build_double_diamond(p, 2))


@pytest.mark.parametrize("m", [1, 0, -1])
def test_double_diamond_needs_m_above_one(m):
    with pytest.raises(ConstructionError, match=r"m > 1 required"):
        build_double_diamond(2, m)


@pytest.mark.parametrize("split", [(1, 3), (2, 3), (0, 4)])
def test_bad_splits_rejected(split):
    with pytest.raises(ConstructionError):
        build_double_diamond(2, 2, split=split)


def test_split_wiring():
    pres, exp = build_double_diamond(2, 3, split=(2, 4))
    from cdlat.presentation import centralizer

    assert exp.by_name("A_1").dim == 2 and exp.by_name("A_2").dim == 4
    assert centralizer(pres, exp.by_name("A_1")) == exp.by_name("AB_1")
    assert centralizer(pres, exp.by_name("A_2")) == exp.by_name("AB_2")
    expected_is_closed(pres, exp)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_diamond_extension_orders_over_trivial(p, m, n):
    pres, _ = extend_diamond(trivial(p), m, n)
    assert (pres.v_dim, pres.w_dim) == extend_diamond_orders(m, n, 0, 0)
    assert pres.w_dim == m * n * n + comb(m * n, 2)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (1, 3), (2, 3)])
def test_diamond_extension_orders_over_heisenberg(p, m, n):
    base = heisenberg(p)
    pres, _ = extend_diamond(base, m, n)
    r, z = base.v_dim, base.w_dim
    assert (pres.v_dim, pres.w_dim) == (2 * m * n + r, m * n * (2 * n + 2 * r + m * n - 1) // 2 + z)
    assert pres.w_dim == z + m * n * r + m * n * n + comb(m * n, 2)


def test_diamond_extension_small_counts():
    pres, _ = extend_diamond(trivial(2), 1, 2)
    assert (pres.v_dim, pres.w_dim) == (4, 5)
    pres, _ = extend_diamond(trivial(2), 2, 2)
    assert (pres.v_dim, pres.w_dim) == (8, 14)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("base", ["trivial", "heisenberg"])
def test_qac_extension_orders(p, n, base):
    b = trivial(p) if base == "trivial" else heisenberg(p)
    pres, exp = extend_qac(b, n)
    r, z = b.v_dim, b.w_dim
    assert (pres.v_dim, pres.w_dim) == extend_qac_orders(n, r, z)
    assert pres.w_dim == z + 2 * n * r + n * n + n * (2 * n - 1) == z + n * (3 * n + 2 * r - 1)
    assert validate(pres) == pres


def test_qac_trivial_counts():
    pres, exp = extend_qac(trivial(2), 2)
    assert (pres.v_dim, pres.w_dim) == (8, 10)
    assert len(exp.members) == 9


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("base", ["trivial", "heisenberg"])
def test_qac_centralizers(p, n, base):
    from cdlat.presentation import centralizer

    b = trivial(p) if base == "trivial" else heisenberg(p)
    pres, exp = extend_qac(b, n)
    nt = qac_ntilde(pres, n)
    for k in range(p + 1):
        assert centralizer(pres, qac_a(pres, n, k)) == subspace_sum(qac_centralizer_b(pres, n, k), nt)


def test_qac_centralizer_rows_at_p3():
    pres, _ = extend_qac(trivial(3), 2)
    cb = qac_centralizer_b(pres, 2, 1)
    b11, b21 = pres.index("b11"), pres.index("b21")
    v = [0] * pres.v_dim
    v[b11], v[b21] = 1, 2  # (k, -1) with k = 1
    assert cb.contains_vector(v)


@pytest.mark.parametrize(
    "builder",
    [lambda b: extend_diamond(b, 1, 2), lambda b: extend_diamond(b, 2, 2), lambda b: extend_qac(b, 2)],
)
@pytest.mark.parametrize("base", ["trivial", "heisenberg"])
def test_predictions_are_closed(builder, base):
    for p in (2, 3):
        b = trivial(p) if base == "trivial" else heisenberg(p)
        expected_is_closed(*builder(b))


def test_bottom_diamond_is_boolean_family():
    pres, exp = extend_diamond(trivial(2), 3, 2)
    subsets = [frozenset(s) for k in range(4) for s in itertools.combinations(range(1, 4), k)]

    def family(s):
        return pres.span_labels(f"a{i}{j}" for i in s for j in (1, 2))

    for s, t in itertools.product(subsets, repeat=2):
        assert (s <= t) == contains(family(t), family(s))
        assert family(s) in set(exp.spaces())


def test_extension_needs_full_space_certificate():
    base = heisenberg(2)
    bogus = ExpectedLattice([], None)
    with pytest.raises(ConstructionError):
        extend_diamond(base, 1, 2, bogus)


def test_extension_rejects_degenerate_base():
    with pytest.raises(ConstructionError):
        extend_qac(abelian(2, 1), 2)


@pytest.mark.parametrize("m,n", [(0, 2), (1, 1)])
def test_diamond_extension_bounds(m, n):
    with pytest.raises(ConstructionError, match="m >= 1 and n >= 2"):
        extend_diamond(trivial(2), m, n)


def test_qac_extension_bound():
    with pytest.raises(ConstructionError, match="n >= 2"):
        extend_qac(trivial(2), 1)


def test_iterate_threads_labels_and_certificates():
    pres, exp = iterate(diamond_builder(1, 2), trivial(2), 2)
    assert pres.v_dim == 8
    assert len(set(pres.v_labels)) == 8 and len(set(pres.w_labels)) == pres.w_dim
    assert "a11'" in pres.v_labels
    assert len(exp.members) == 5
    assert exp.expected_shape.length == 4


def test_iterate_qac_twice_has_four_components():
    pres, exp = iterate(qac_builder(2), trivial(2), 2)
    assert pres.v_dim == 16
    assert exp.expected_shape.labels() == ["qac(3)"] * 4


def test_iterate_rejects_zero():
    with pytest.raises(ConstructionError):
        iterate(diamond_builder(1, 2), trivial(2), 0)


def test_direct_power():
    h = heisenberg(2)
    assert direct_power(h, 1) == h
    assert direct_power(h, 3).v_dim == 6
    lat, _ = compute_cd_full(direct_power(h, 2))
    assert len(lat.members) == 25


def test_heisenberg_cube_has_125_members():
    lat, _ = compute_cd_full(direct_power(heisenberg(2), 3))
    assert len(lat.members) == 125
