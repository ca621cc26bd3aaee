from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cdlat import latfile
from cdlat.cdengine import compute_cd_full, covers
from cdlat.constructions import build_double_diamond
from cdlat.gfplin import Subspace
from cdlat.latfile import LatticeFile, LatticeFileError
from cdlat.presentation import heisenberg

from conftest import SMALL

CHAIN = """\
cdl 1
p 2
d 2
e 1
mode predicted
max 3
member 0
member 1 10
member 2 10 01
cover 1 0
cover 2 1
"""


def test_chain_roundtrip_and_dot():
    lf = latfile.loads(CHAIN)
    assert [u.dim for u in lf.members] == [0, 1, 2]
    assert latfile.dumps(lf) == CHAIN
    dot = latfile.to_dot(lf)
    assert dot.count("[label=") == 3 and dot.count("->") == 2
    assert "rankdir=BT" in dot


def test_double_diamond_dot():
    pres, exp = build_double_diamond(2, 2)
    lf = latfile.from_lattice((pres, exp))
    dot = latfile.to_dot(lf)
    assert dot.count("[label=") == 7 and dot.count("->") == 8
    assert '[label="A_1"]' in dot
    plain = latfile.to_dot(lf, labels=False)
    assert "A_1" not in plain and '[label="dim 2"]' in plain


@pytest.mark.parametrize("name", sorted(SMALL))
def test_full_lattice_roundtrip(name):
    lat, _ = compute_cd_full(SMALL[name])
    lf = latfile.from_lattice(lat, shape="whatever")
    back = latfile.loads(latfile.dumps(lf))
    assert back == lf
    assert back.members == lat.members and back.covers == lat.covers


def test_file_roundtrip(tmp_path):
    lat, _ = compute_cd_full(heisenberg(3))
    lf = latfile.from_lattice(lat)
    path = tmp_path / "h.cdl"
    latfile.write(lf, path)
    assert latfile.read(path) == lf


def test_output_is_byte_deterministic():
    pres, exp = build_double_diamond(2, 2)
    a = latfile.dumps(latfile.from_lattice(compute_cd_full(pres)[0]))
    b = latfile.dumps(latfile.from_lattice(compute_cd_full(pres)[0]))
    assert a == b


def test_large_prime_rows_use_commas():
    u = Subspace.span([[1, 12, 0]], 13, 3)
    lf = LatticeFile(13, 3, 0, "predicted", 3, [Subspace.zero(3, 13), u], covers([Subspace.zero(3, 13), u]))
    text = latfile.dumps(lf)
    assert "member 1 1,12,0" in text
    assert latfile.loads(text) == lf


@given(st.sampled_from([2, 3, 5, 11]), st.integers(1, 4), st.randoms(use_true_random=False))
def test_random_member_lists_roundtrip(p, d, rnd):
    spaces = {Subspace.span([[rnd.randrange(p) for _ in range(d)] for _ in range(rnd.randrange(d + 1))], p, d) for _ in range(5)}
    members = sorted(spaces, key=Subspace.sort_key)
    lf = LatticeFile(p, d, 1, "full", 0, members, covers(members), {0: "bottom"})
    assert latfile.loads(latfile.dumps(lf)) == lf


def test_comments_and_component_lines_are_ignored():
    text = CHAIN.replace("max 3\n", "max 3  # top\ncomponent 0 diamond(1)\n")
    assert latfile.loads(text) == latfile.loads(CHAIN)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda s: s.replace("cdl 1", "cdl 2"),
        lambda s: "",
        lambda s: s.replace("mode predicted", "mode guessed"),
        lambda s: s.replace("member 1 10", "member 1 12"),
        lambda s: s.replace("member 1 10", "member 1 100"),
        lambda s: s.replace("member 1 10", "member 2 10"),
        lambda s: s.replace("member 2 10 01", "member 2 10 10"),
        lambda s: s.replace("member 1 10", "member x 10"),
        lambda s: s.replace("cover 2 1", "cover 2 7"),
        lambda s: s.replace("cover 2 1", "cover 2"),
        lambda s: s.replace("p 2\n", "p 2\np 3\n"),
        lambda s: s.replace("e 1\n", ""),
        lambda s: s + "bogus 1\n",
        lambda s: s + "name 0\n",
        lambda s: s + "name z bottom\n",
    ],
)
def test_malformed_inputs(mutate):
    with pytest.raises(LatticeFileError):
        latfile.loads(mutate(CHAIN))


def test_error_carries_line_number():
    with pytest.raises(LatticeFileError) as exc:
        latfile.loads(CHAIN.replace("member 1 10", "member 1 12"))
    assert exc.value.lineno == 8
