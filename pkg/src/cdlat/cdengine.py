"""Exhaustive and sampled computation of Chermak-Delgado lattices.

A subspace U of V = P/Z(P) has measure exponent 2e + dim U + dim U^perp.
``compute_cd_full`` scans every subspace pattern by pattern (two passes: the
maximum first, then the members attaining it).  ``verify_predicted`` checks a
predicted member list without scanning everything.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernel as _kernel
from .gfplin import (
    Subspace,
    contains,
    enumerate_subspaces,
    extensions_of,
    gaussian_binomial,
    hyperplanes_of,
    pivot_patterns,
    subspace_count,
    subspace_intersect,
    subspace_sum,
)
from .presentation import CentralPresentation, MeasureExponent, centralizer, measure

DEFAULT_BUDGET = 5 * 10**8


class BudgetExceeded(RuntimeError):
    def __init__(self, total: int, budget: int):
        super().__init__(
            f"full enumeration needs {total} subspaces, budget is {budget}; "
            "raise the budget or use verify mode with a predicted lattice"
        )
        self.total = total
        self.budget = budget


class LatticeInvariantError(AssertionError):
    pass


@dataclass
class CDLattice:
    presentation: CentralPresentation
    max_measure: MeasureExponent
    members: list[Subspace]
    covers: list[tuple[int, int]]
    mode: str = "full"
    names: dict[int, str] = field(default_factory=dict)

    @property
    def value(self) -> int:
        return self.max_measure.value

    def index(self, u: Subspace) -> int:
        return self.members.index(u)

    def name_of(self, i: int) -> str:
        return self.names.get(i, f"#{i}")

    def bind_names(self, named: Iterable) -> "CDLattice":
        """Attach labels from NamedSubgroup-like objects whose space is a member."""
        pos = {u: i for i, u in enumerate(self.members)}
        for x in named:
            if x.space in pos:
                self.names.setdefault(pos[x.space], x.name)
        return self

    def poset(self):
        from .shapes import Poset

        return Poset(len(self.members), tuple(self.covers), tuple(u.dim for u in self.members))


@dataclass
class SearchStats:
    subspaces_scanned: int = 0
    per_dim: dict[int, int] = field(default_factory=dict)
    wall_time: float = 0.0
    partitions: int = 0
    jobs: int = 1
    kernel: str = _kernel.IMPLEMENTATION


def _sorted_unique(spaces: Iterable[Subspace]) -> list[Subspace]:
    return sorted(set(spaces), key=Subspace.sort_key)


def covers(members: Sequence[Subspace]) -> list[tuple[int, int]]:
    """Pairs (i, j) with members[j] strictly inside members[i] and nothing between."""
    n = len(members)
    below = [[j for j in range(n) if j != i and members[j].dim < members[i].dim and contains(members[i], members[j])] for i in range(n)]
    out = []
    for i in range(n):
        bset = set(below[i])
        for j in below[i]:
            if not any(j in below[k] for k in bset if k != j):
                out.append((i, j))
    return sorted(out)


# --- full search -------------------------------------------------------------


def _scan_task(args):
    tensor, p, piv, collect = args
    best, nbest, scanned, rows = _kernel.scan_pattern(tensor, p, piv, collect)
    return best, scanned, rows


def _run(tasks, jobs):
    if jobs <= 1 or len(tasks) < 2:
        return [_scan_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_scan_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("CDLAT_JOBS", "1") or 1)
    return max(1, int(jobs))


def compute_cd_full(pres: CentralPresentation, budget: int = DEFAULT_BUDGET, jobs: int | None = 1):
    """Exact CD lattice by scanning every subspace of V.  Returns (CDLattice, SearchStats)."""
    jobs = resolve_jobs(jobs)
    d, p = pres.v_dim, pres.p
    total = subspace_count(d, p)
    if total > budget:
        raise BudgetExceeded(total, budget)
    t0 = time.perf_counter()
    tensor = _kernel.form_tensor(pres)
    patterns = pivot_patterns(d)

    first = _run([(tensor, p, piv, -1) for piv in patterns], jobs)
    top = max(b for b, _, _ in first)
    stats = SearchStats(partitions=len(patterns), jobs=jobs)
    for piv, (_, scanned, _) in zip(patterns, first):
        stats.per_dim[len(piv)] = stats.per_dim.get(len(piv), 0) + scanned
        stats.subspaces_scanned += scanned

    hits = [piv for piv, (b, _, _) in zip(patterns, first) if b == top]
    second = _run([(tensor, p, piv, top) for piv in hits], jobs)
    found = []
    for piv, (_, _, rows) in zip(hits, second):
        for basis in rows:
            found.append(Subspace(p, d, tuple(tuple(int(x) for x in r) for r in basis), tuple(piv)))
    members = _sorted_unique(found)
    stats.wall_time = time.perf_counter() - t0

    lat = CDLattice(pres, measure(pres, members[0]), members, covers(members), "full")
    problem = check_duality(pres, lat)
    if not problem:
        raise LatticeInvariantError(problem.message)
    return lat, stats


def expected_scan_total(d: int, p: int) -> dict[int, int]:
    return {k: gaussian_binomial(d, k, p) for k in range(d + 1)}


# --- structural checks -------------------------------------------------------


@dataclass
class CheckResult:
    ok: bool
    member: str | None = None
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def _members_and_names(lattice) -> tuple[list[Subspace], dict[int, str]]:
    """Members of a CDLattice, an ExpectedLattice or a plain list of subspaces."""
    raw = list(getattr(lattice, "members", lattice))
    members = [getattr(x, "space", x) for x in raw]
    names = getattr(lattice, "names", None)
    if not isinstance(names, dict):
        names = {i: x.name for i, x in enumerate(raw) if hasattr(x, "name")}
    return members, names


def check_duality(pres: CentralPresentation, lattice) -> CheckResult:
    """Centralizer duality, closure under sum and intersection, and the modular law."""
    members, names = _members_and_names(lattice)
    label = lambda i: names.get(i, str(members[i]))  # noqa: E731
    pos = {u: i for i, u in enumerate(members)}
    if not members:
        return CheckResult(False, None, "empty member list")
    for i, u in enumerate(members):
        c = centralizer(pres, u)
        if c not in pos:
            return CheckResult(False, label(i), f"centralizer of {label(i)} is not a member")
        if centralizer(pres, c) != u:
            return CheckResult(False, label(i), f"C(C({label(i)})) differs from {label(i)}")
    n = len(members)
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = subspace_sum(members[i], members[j])
            t = subspace_intersect(members[i], members[j])
            if s not in pos:
                return CheckResult(False, label(i), f"{label(i)} + {label(j)} is not a member")
            if t not in pos:
                return CheckResult(False, label(i), f"{label(i)} meet {label(j)} is not a member")
            join[i][j] = join[j][i] = pos[s]
            meet[i][j] = meet[j][i] = pos[t]
    leq = [[join[i][j] == j for j in range(n)] for i in range(n)]
    for x in range(n):
        for z in range(n):
            if not leq[x][z]:
                continue
            for y in range(n):
                if join[x][meet[y][z]] != meet[join[x][y]][z]:
                    return CheckResult(False, label(y), f"modular law fails at ({label(x)}, {label(y)}, {label(z)})")
    return CheckResult(True)


def minimum_is_center(lattice) -> bool:
    members, _ = _members_and_names(lattice)
    if not members:
        return False
    low = min(members, key=Subspace.sort_key)
    if not all(contains(u, low) for u in members):
        return False
    return low.dim == 0


# --- verification of predicted lattices ---------------------------------------


@dataclass
class Counterexample:
    space: Subspace
    value: int
    reason: str

    def __str__(self) -> str:
        return f"{self.reason}: {self.space} has measure exponent {self.value}"


@dataclass
class VerifyReport:
    status: str  # PASS | COUNTEREXAMPLE
    value: int | None
    counterexample: Counterexample | None = None
    closure: CheckResult | None = None
    adversarial: int = 0
    random: int = 0
    exhaustive: bool = False
    lattice: CDLattice | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def summary(self) -> str:
        how = "exhaustive scan" if self.exhaustive else f"{self.adversarial} neighbours + {self.random} random"
        if self.passed:
            return f"PASS: measure exponent {self.value}, {how}"
        detail = self.counterexample or (self.closure.message if self.closure else "")
        return f"COUNTEREXAMPLE: {detail} ({how})"


CHUNK = 20000
INTERVAL_CAP = 5000


def _complement_rows(u: Subspace, w: Subspace) -> list[tuple[int, ...]]:
    """Vectors of w that extend a basis of u to a basis of w."""
    out: list[tuple[int, ...]] = []
    cur = u
    for v in w.basis:
        if not cur.contains_vector(v):
            out.append(v)
            cur = Subspace.span(list(cur.basis) + [v], u.p, u.ambient_dim)
    return out


def _interval_batches(members: Sequence[Subspace], cap: int):
    """Spanning sets (grouped by size) of all subspaces strictly between comparable members."""
    seen: set[tuple[Subspace, Subspace]] = set()
    for u in members:
        for w in members:
            gap = w.dim - u.dim
            if gap < 3 or (u, w) in seen or not contains(w, u) or subspace_count(gap, u.p) > cap:
                continue  # gaps of 1 or 2 are covered by the neighbour scan
            seen.add((u, w))
            q = np.array(_complement_rows(u, w), dtype=np.int64)
            base = np.array(u.basis, dtype=np.int64).reshape(u.dim, u.ambient_dim)
            for k in range(1, gap):
                coeffs = [x.basis for x in enumerate_subspaces(gap, u.p, k)]
                lifted = np.einsum("nkg,gd->nkd", np.array(coeffs, dtype=np.int64), q) % u.p
                stacked = np.concatenate([np.broadcast_to(base, (len(coeffs),) + base.shape), lifted], axis=1)
                yield np.ascontiguousarray(stacked)


def _sample_task(args):
    tensor, p, d, k, n, seed = args
    rng = np.random.default_rng(seed)
    samples = rng.integers(0, p, size=(n, k, d), dtype=np.int64)
    span, frank = _kernel.batch_measure(tensor, p, samples)
    return samples, span, frank


def _sample_plan(d: int, samples: int, root: int):
    """(dimension, count, seed) chunks; random sets of k vectors for 1 <= k < d."""
    dims = list(range(1, d)) or [d]
    per = samples // len(dims)
    extra = samples - per * len(dims)
    seeds = np.random.SeedSequence(root).spawn(len(dims))
    plan = []
    for idx, k in enumerate(dims):
        want = per + (1 if idx < extra else 0)
        chunk_seeds = seeds[idx].spawn(max(1, -(-want // CHUNK)))
        for c, s in enumerate(chunk_seeds):
            n = min(CHUNK, want - c * CHUNK)
            if n > 0:
                plan.append((k, n, s))
    return plan


def verify_predicted(
    pres: CentralPresentation,
    predicted,
    samples: int = 10**6,
    seed: int = 0,
    jobs: int | None = 1,
    budget: int = DEFAULT_BUDGET,
    interval_cap: int = INTERVAL_CAP,
) -> VerifyReport:
    """Check that ``predicted`` (ExpectedLattice or subspace list) is CD(pres).

    Members must share one measure value s and be closed under sum,
    intersection and centralizer.  Then codimension-1 subspaces and one-step
    extensions of every member, every subspace between two comparable members
    whose quotient has at most ``interval_cap`` subspaces, plus random
    subspaces, must never exceed s, and any of them reaching s must itself be
    a member.  When the
    whole subspace lattice is no larger than ``samples`` it is scanned instead.
    """
    jobs = resolve_jobs(jobs)
    named = list(getattr(predicted, "members", predicted))
    spaces = [getattr(x, "space", x) for x in named]
    members = _sorted_unique(spaces)
    if not members:
        return VerifyReport("COUNTEREXAMPLE", None, closure=CheckResult(False, None, "empty prediction"))
    d, p, e = pres.v_dim, pres.p, pres.w_dim
    tensor = _kernel.form_tensor(pres)
    memset = set(members)

    values = {u: measure(pres, u).value for u in members}
    s = max(values.values())
    for u in members:
        if values[u] != s:
            return VerifyReport("COUNTEREXAMPLE", s, Counterexample(u, values[u], "predicted member below the maximum"))

    lat = CDLattice(pres, measure(pres, members[0]), members, covers(members), "verified-predicted")
    if named and hasattr(named[0], "name"):
        lat.bind_names(named)
    closure = check_duality(pres, lat)
    if not closure:
        return VerifyReport("COUNTEREXAMPLE", s, closure=closure)

    total = subspace_count(d, p)
    if total <= samples and total <= budget:
        exact, _ = compute_cd_full(pres, budget=budget, jobs=jobs)
        if exact.value > s:
            return VerifyReport(
                "COUNTEREXAMPLE", s, Counterexample(exact.members[0], exact.value, "subspace beats the predicted maximum"),
                closure, exhaustive=True,
            )
        for u in exact.members:
            if u not in memset:
                return VerifyReport(
                    "COUNTEREXAMPLE", s, Counterexample(u, s, "MISSING_MEMBER"), closure, exhaustive=True
                )
        lat.mode = "verified-predicted"
        return VerifyReport("PASS", s, None, closure, exhaustive=True, lattice=lat)

    def judge(u: Subspace, value: int) -> Counterexample | None:
        if value > s:
            return Counterexample(u, value, "subspace beats the predicted maximum")
        if value == s and u not in memset:
            return Counterexample(u, value, "MISSING_MEMBER")
        return None

    # neighbours of members, where competing subspaces sit in the proofs
    adversarial = 0
    for u in members:
        for nb in itertools.chain(hyperplanes_of(u), extensions_of(u)):
            adversarial += 1
            bad = judge(nb, measure(pres, nb).value)
            if bad:
                return VerifyReport("COUNTEREXAMPLE", s, bad, closure, adversarial)

    # everything strictly between two comparable members, when the gap is small
    for batch in _interval_batches(members, interval_cap):
        span, frank = _kernel.batch_measure(tensor, p, batch)
        adversarial += len(batch)
        bad, _ = _scan_samples([(batch, span, frank)], d, e, p, s, judge)
        if bad:
            return VerifyReport("COUNTEREXAMPLE", s, bad, closure, adversarial)

    plan = _sample_plan(d, samples, seed)
    tasks = [(tensor, p, d, k, n, sd) for k, n, sd in plan]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = ex.map(_sample_task, tasks)
            bad, drawn = _scan_samples(results, d, e, p, s, judge)
    else:
        bad, drawn = _scan_samples(map(_sample_task, tasks), d, e, p, s, judge)
    if bad:
        return VerifyReport("COUNTEREXAMPLE", s, bad, closure, adversarial, drawn)
    return VerifyReport("PASS", s, None, closure, adversarial, drawn, lattice=lat)


def _scan_samples(results, d, e, p, s, judge):
    drawn = 0
    for samples, span, frank in results:
        values = 2 * e + span + d - frank
        drawn += len(values)
        # only samples reaching s can refute the prediction
        for i in np.nonzero(values >= s)[0]:
            u = Subspace.span(samples[i].tolist(), p, d)
            bad = judge(u, int(values[i]))
            if bad:
                return bad, drawn
    return None, drawn


__all__ = [
    "BudgetExceeded",
    "CDLattice",
    "CheckResult",
    "Counterexample",
    "LatticeInvariantError",
    "SearchStats",
    "VerifyReport",
    "check_duality",
    "compute_cd_full",
    "covers",
    "minimum_is_center",
    "resolve_jobs",
    "verify_predicted",
]
