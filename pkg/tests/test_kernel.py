from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdlat import kernel
from cdlat._kernel_py import scan_pattern as py_scan
from cdlat.gfplin import Subspace, enumerate_pattern, pivot_patterns
from cdlat.presentation import make_presentation, measure

IMPLS = sorted(kernel.IMPLEMENTATIONS)


@st.composite
def forms(draw, max_d=4, max_e=3):
    p = draw(st.sampled_from([2, 3, 5]))
    d = draw(st.integers(1, max_d))
    e = draw(st.integers(0, max_e))
    rel = {(i, j): {w: draw(st.integers(0, p - 1)) for w in range(e)} for i in range(d) for j in range(i + 1, d)}
    return make_presentation(p, [f"g{i}" for i in range(d)], [f"z{w}" for w in range(e)], rel)


def slow_scan(pres, piv):
    vals = [(measure(pres, u).value, u) for u in enumerate_pattern(piv, pres.v_dim, pres.p)]
    best = max(v for v, _ in vals)
    return best, [u for v, u in vals if v == best], len(vals)


def test_compiled_kernel_is_available():
    # the build ships the extension; the fallback is only for broken builds
    assert "cython" in kernel.IMPLEMENTATIONS
    assert kernel.IMPLEMENTATION == "cython"


@pytest.mark.parametrize("impl", IMPLS)
@given(pres=forms())
def test_scan_matches_slow_path(impl, pres):
    scan = kernel.IMPLEMENTATIONS[impl].scan_pattern
    tensor = kernel.form_tensor(pres)
    for piv in pivot_patterns(pres.v_dim):
        best, members, count = slow_scan(pres, piv)
        b, nb, scanned, rows = scan(tensor, pres.p, piv, best)
        assert (b, nb, scanned) == (best, len(members), count)
        got = [Subspace(pres.p, pres.v_dim, tuple(tuple(int(x) for x in r) for r in basis), tuple(piv)) for basis in rows]
        assert got == members


@given(pres=forms(max_d=5))
def test_implementations_agree_exactly(pres):
    tensor = kernel.form_tensor(pres)
    for piv in pivot_patterns(pres.v_dim):
        outs = [kernel.IMPLEMENTATIONS[i].scan_pattern(tensor, pres.p, piv, 0) for i in IMPLS]
        assert all(o[:3] == outs[0][:3] for o in outs)


@pytest.mark.parametrize("impl", IMPLS)
@given(pres=forms(), seed=st.integers(0, 2**32 - 1))
def test_batch_measure_matches_slow_path(impl, pres, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, pres.v_dim + 1))
    samples = rng.integers(0, pres.p, size=(20, k, pres.v_dim))
    span, frank = kernel.IMPLEMENTATIONS[impl].batch_measure(kernel.form_tensor(pres), pres.p, samples)
    for s in range(20):
        u = Subspace.span(samples[s].tolist(), pres.p, pres.v_dim)
        assert span[s] == u.dim
        assert 2 * pres.w_dim + span[s] + pres.v_dim - frank[s] == measure(pres, u).value


def test_fallback_selected_by_environment():
    env = dict(os.environ, CDLAT_KERNEL="python")
    out = subprocess.run(
        [sys.executable, "-c", "from cdlat import kernel; print(kernel.IMPLEMENTATION)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_empty_pattern_scans_zero_space():
    pres = make_presentation(2, ["a", "b"], ["z"], {(0, 1): {0: 1}})
    b, nb, scanned, rows = py_scan(kernel.form_tensor(pres), 2, (), 4)
    assert (b, nb, scanned, rows) == (4, 1, 1, [()])
