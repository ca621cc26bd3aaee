"""Compare the compiled and pure-Python scan kernels.

    python benchmarks/bench_kernel.py            # d=6 and d=8 presentations
    python benchmarks/bench_kernel.py --quick    # d=6 only

Both kernels are run on identical inputs and their outputs are checked for
equality before any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cdlat import kernel
from cdlat.constructions import build_double_diamond, extend_diamond
from cdlat.gfplin import pivot_patterns
from cdlat.presentation import heisenberg


def full_scan(impl, tensor, p, d):
    best, total = -1, 0
    for piv in pivot_patterns(d):
        b, _, scanned, _ = impl.scan_pattern(tensor, p, piv, 0)
        best, total = max(best, b), total + scanned
    return best, total


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def bench(name, pres, samples, reps):
    tensor = kernel.form_tensor(pres)
    p, d = pres.p, pres.v_dim
    rng = np.random.default_rng(0)
    k = max(1, d // 2)
    batch = rng.integers(0, p, size=(samples, k, d))
    rows = []
    results = {}
    for impl_name in sorted(kernel.IMPLEMENTATIONS):
        impl = kernel.IMPLEMENTATIONS[impl_name]
        scan_t = []
        for _ in range(reps):
            out, t = timed(full_scan, impl, tensor, p, d)
            scan_t.append(t)
        meas, mt = timed(impl.batch_measure, tensor, p, batch)
        results[impl_name] = (out, [np.asarray(x).tolist() for x in meas])
        rows.append((impl_name, out[1], min(scan_t), mt))
    outs = list(results.values())
    assert all(o == outs[0] for o in outs), "kernels disagree"
    print(f"\n{name}: p={p} d={d} e={pres.w_dim}, {samples} random {k}-subsets")
    print(f"  {'kernel':8} {'subspaces':>10} {'scan s':>9} {'sub/s':>11} {'measure s':>10}")
    for impl_name, total, st, mt in rows:
        print(f"  {impl_name:8} {total:>10} {st:>9.3f} {total / st:>11.0f} {mt:>10.3f}")
    if len(rows) > 1:
        fast = {r[0]: r for r in rows}
        if "cython" in fast:
            print(f"  speedup scan x{fast['python'][2] / fast['cython'][2]:.1f}, "
                  f"measure x{fast['python'][3] / fast['cython'][3]:.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="skip the d=8 case")
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    print(f"selected kernel: {kernel.IMPLEMENTATION}; available: {', '.join(sorted(kernel.IMPLEMENTATIONS))}")
    bench("diamond extension of Heisenberg", extend_diamond(heisenberg(2), 1, 2)[0], args.samples, args.reps)
    if not args.quick:
        bench("double diamond m=2", build_double_diamond(2, 2)[0], args.samples, 1)


if __name__ == "__main__":
    main()
