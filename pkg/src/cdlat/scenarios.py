"""Named end-to-end reproductions: build, compute, classify, assert."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .cdengine import check_duality, compute_cd_full, minimum_is_center, verify_predicted
from .constructions import (
    build_double_diamond,
    diamond_builder,
    extend_diamond,
    extend_qac,
    iterate,
    qac_a,
    qac_centralizer_b,
    qac_ntilde,
)
from .gfplin import subspace_sum
from .presentation import centralizer, direct_product, embed_sum, heisenberg, trivial
from .shapes import classify


@dataclass
class Claim:
    text: str
    anchor: str
    ok: bool


@dataclass
class ScenarioReport:
    name: str
    claims: list[Claim] = field(default_factory=list)

    def check(self, text: str, anchor: str, ok: bool) -> bool:
        self.claims.append(Claim(text, anchor, bool(ok)))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return bool(self.claims) and all(c.ok for c in self.claims)

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.ok else 'FAIL'}  {c.text}  [{c.anchor}]" for c in self.claims]
        out.append(f"scenario {self.name}: {'PASS' if self.passed else 'FAIL'}")
        return out


def _full_vs_predicted(rep, pres, exp, jobs, count, shape):
    lat, stats = compute_cd_full(pres, jobs=jobs)
    lat.bind_names(exp.members)
    got = classify(lat.poset())
    rep.check(f"full scan of {stats.subspaces_scanned} subspaces finds {len(lat.members)} members", "count", len(lat.members) == count)
    rep.check("computed member set equals the predicted list", "CD(P) = predicted", set(lat.members) == set(exp.spaces()))
    rep.check(f"shape {got.summary()}", shape, got.matches(shape))
    rep.check("shape agrees with the predicted shape", "predicted shape", got.same_as(exp.expected_shape))
    rep.check("duality, closure and modular law hold", "C(C(H)) = H", bool(check_duality(pres, lat)))
    return lat


def thm1_1(jobs=1, heavy=False) -> ScenarioReport:
    rep = ScenarioReport("thm1.1")
    pres, exp = build_double_diamond(2, 2)
    rep.check("|P| = p^22 and |Z(P)| = p^14 at m = 2", "p^{4m^2+3m}, p^{4m^2-m}", (pres.order_exponent, pres.w_dim) == (22, 14))
    lat = _full_vs_predicted(rep, pres, exp, jobs, 7, "2-string[diamond(2),diamond(2)] uniform idx=p^2")
    rep.check("names bound: ZP, A_1, A_2, A, AB_1, AB_2, P", "CD(P) = {ZP, A_1, A_2, A, AB_1, AB_2, P}",
              sorted(lat.names.values()) == sorted(["ZP", "A_1", "A_2", "A", "AB_1", "AB_2", "P"]))
    rep.check("minimum member is Z(P)", "min CD(P) = Z(P)", minimum_is_center(lat))
    return rep


def thm2_1_small(jobs=1, heavy=False) -> ScenarioReport:
    rep = ScenarioReport("thm2.1-small")
    base = heisenberg(2)
    pres, exp = extend_diamond(base, 1, 2)
    rep.check("|P/Z(P)| = p^(2mn+r) = p^6", "2mn + r", pres.v_dim == 6)
    lat = _full_vs_predicted(rep, pres, exp, jobs, 7, "3-string[diamond(1),qac(3),diamond(1)] mixed")
    mid = classify(lat.poset()).components[1]
    base_shape = classify(compute_cd_full(base)[0].poset()).components[0]
    rep.check("middle component is isomorphic to CD(N)", "center component = CD(N)", mid.same_shape(base_shape))
    return rep


def cor2_5_l2(jobs=1, heavy=False) -> ScenarioReport:
    rep = ScenarioReport("cor2.5-l2")
    pres, exp = iterate(diamond_builder(1, 2), trivial(2), 2)
    rep.check("v_dim = 8", "2mn + r", pres.v_dim == 8)
    lat = _full_vs_predicted(rep, pres, exp, jobs, 5, "4-string[diamond(1),diamond(1),diamond(1),diamond(1)] uniform idx=p^2")
    rep.check("lattice is a chain of 5", "2l-string of 1-diamonds", len(lat.covers) == 4)
    return rep


def cor3_6_l1(jobs=1, heavy=False) -> ScenarioReport:
    rep = ScenarioReport("cor3.6-l1")
    pres, exp = extend_qac(trivial(2), 2)
    rep.check("v_dim = 4n + r = 8, w_dim = 10", "4n + r", (pres.v_dim, pres.w_dim) == (8, 10))
    _full_vs_predicted(rep, pres, exp, jobs, 9, "2-string[qac(3),qac(3)] uniform idx=p^2")
    return rep


def thm3_1(jobs=1, heavy=False, samples=10**6) -> ScenarioReport:
    rep = ScenarioReport("thm3.1")
    pres, exp = extend_qac(heisenberg(2), 2)
    rep.check("v_dim = 10", "4n + r", pres.v_dim == 10)
    rep.check(f"{len(exp.members)} predicted members", "{ZP, P, A_k, C(A_k)} + CD(N)", len(exp.members) == 13)
    if heavy:
        _full_vs_predicted(rep, pres, exp, jobs, 13, "3-string[qac(3),qac(3),qac(3)] uniform")
    else:
        r = verify_predicted(pres, exp, samples=samples, jobs=jobs)
        rep.check(r.summary(), "no subgroup beats m(P)", r.passed)
    pred = classify(exp.poset())
    idx = [c.edge_index_profile for c in pred.components]
    rep.check(f"predicted shape {pred.summary()}", "3-string of M_{p+3}", pred.labels() == ["qac(3)"] * 3)
    rep.check("outer cover indices p^2, inner p^1", "|A_k| = p^n", idx[0] == idx[2] == (2,) * 6 and idx[1] == (1,) * 6)
    return rep


def lem3_3(jobs=1, heavy=False) -> ScenarioReport:
    rep = ScenarioReport("lem3.3")
    for p in (2, 3):
        for n in (2, 3):
            for bname, base in (("trivial", trivial(p)), ("heisenberg", heisenberg(p))):
                pres, exp = extend_qac(base, n)
                nt = qac_ntilde(pres, n)
                ok = all(
                    centralizer(pres, qac_a(pres, n, k)) == subspace_sum(qac_centralizer_b(pres, n, k), nt)
                    for k in range(p + 1)
                )
                rep.check(f"p={p} n={n} base={bname}: C(A_k) for 0 <= k <= p", "C(A_k) = <b_1j^k b_2j^-1> Ntilde", ok)
    return rep


def bw2012_product(jobs=1, heavy=False) -> ScenarioReport:
    rep = ScenarioReport("bw2012-product")
    h = heisenberg(2)
    lat1, _ = compute_cd_full(h, jobs=jobs)
    lat, _ = compute_cd_full(direct_product(h, h), jobs=jobs)
    sums = {embed_sum(u, v) for u in lat1.members for v in lat1.members}
    rep.check(f"CD(H x H) has {len(lat.members)} members", "25 = 5 x 5", len(lat.members) == 25)
    rep.check("members are exactly U1 + U2 over factor members", "CD(G1 x G2) = CD(G1) x CD(G2)", set(lat.members) == sums)
    return rep


def remark1_asymmetric(jobs=1, heavy=False, samples=10**5) -> ScenarioReport:
    rep = ScenarioReport("remark1-asymmetric")
    pres, exp = build_double_diamond(2, 3, split=(2, 4))
    a1, a2 = exp.by_name("A_1"), exp.by_name("A_2")
    rep.check(f"|A_1| = p^{a1.dim} differs from |A_2| = p^{a2.dim}", "|A_1| = |A_2| not needed", a1.dim != a2.dim)
    r = verify_predicted(pres, exp, samples=samples, jobs=jobs)
    rep.check(r.summary(), "CD(P) = {ZP, A_1, A_2, A, AB_1, AB_2, P}", r.passed)
    rep.check("predicted shape is a 2-string of 2-diamonds", "2-string of 2-diamonds",
              classify(exp.poset()).labels() == ["diamond(2)", "diamond(2)"])
    with_small = build_double_diamond(2, 2, split=(2, 2))
    lat, _ = compute_cd_full(with_small[0], jobs=jobs)
    rep.check("block wiring at split (2,2) reproduces the 7 members", "CD(P) = predicted",
              set(lat.members) == set(with_small[1].spaces()))
    return rep


SCENARIOS: dict[str, Callable[..., ScenarioReport]] = {
    "thm1.1": thm1_1,
    "thm2.1-small": thm2_1_small,
    "cor2.5-l2": cor2_5_l2,
    "thm3.1": thm3_1,
    "lem3.3": lem3_3,
    "cor3.6-l1": cor3_6_l1,
    "bw2012-product": bw2012_product,
    "remark1-asymmetric": remark1_asymmetric,
}


def run(name: str, jobs: int = 1, heavy: bool = False) -> ScenarioReport:
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None
    return fn(jobs=jobs, heavy=heavy)
