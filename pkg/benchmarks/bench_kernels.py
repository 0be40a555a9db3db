"""Compare the compiled and pure kernel backends on representative loads.

Run:  python benchmarks/bench_kernels.py [--sizes 60,120,240]

The compiled path runs the identical algorithms on int64 with overflow
guards; the pure path is arbitrary-precision Python.  Outputs one row per
(kernel, size) with both timings, plus an end-to-end row computing the
intersection homology of the suspension of the 7-vertex torus.
"""

import argparse
import random
import time

import numpy as np

from strathom._kernels import _ref

try:
    from strathom._kernels import _fast
except ImportError:
    _fast = None


def boundary_like(rng, m, n):
    """Sparse {-1, 0, 1} matrix resembling a simplicial boundary operator."""
    a = [[0] * n for _ in range(m)]
    for j in range(n):
        for i in rng.sample(range(m), min(4, m)):
            a[i][j] = rng.choice((-1, 1))
    return a


def timeit(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def bench_kernels(sizes):
    rng = random.Random(7)
    rows = []
    for n in sizes:
        m = int(n * 1.5)
        a = boundary_like(rng, m, n)
        arr = np.array(a, dtype=np.int64)
        pure_snf = timeit(_ref.snf, a, m, n, False)
        fast_snf = timeit(_fast.snf_i64, arr, False) if _fast else float("nan")
        rows.append(("snf", f"{m}x{n}", fast_snf, pure_snf))
        pure_ker = timeit(_ref.kernel_basis, a, m, n)
        fast_ker = timeit(_fast.kernel_basis_i64, arr) if _fast else float("nan")
        rows.append(("kernel_basis", f"{m}x{n}", fast_ker, pure_ker))
        pure_rk = timeit(_ref.modp_rank, a, m, n, 5)
        fast_rk = timeit(_fast.modp_rank_i64, arr, 5) if _fast else float("nan")
        rows.append(("modp_rank(5)", f"{m}x{n}", fast_rk, pure_rk))
    return rows


def bench_end_to_end():
    from strathom import chains, homalg
    from strathom.complexes import barycentric_subdivide, cone
    from strathom.fixtures import torus7
    from strathom.perversity import Perversity
    from strathom.strat import strata_from_levels

    cx, lev = cone(torus7())
    st0 = strata_from_levels(cx, lev)
    sd, st = barycentric_subdivide(cx, st0)
    apex = next(s.id for s in st.strata if not s.regular)
    p = Perversity(st, {apex: 1})

    def run():
        c = chains.intersection_complex(st, p)
        return homalg.homology(c)

    compiled = timeit(run) if _fast else float("nan")
    # the dispatcher reads the module-level _fast binding; patch it to force
    # the arbitrary-precision path for the comparison run
    import strathom._kernels as kmod

    saved = kmod._fast
    kmod._fast = None
    try:
        pure = timeit(run)
    finally:
        kmod._fast = saved
    return [("H^p(sd cone T^2) end-to-end", "-", compiled, pure)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="60,120,240")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"backend available: {'compiled+pure' if _fast else 'pure only'}")
    print(f"{'kernel':<28}{'size':<10}{'compiled':>12}{'pure':>12}{'speedup':>10}")
    for name, size, fast, pure in bench_kernels(sizes) + bench_end_to_end():
        ratio = pure / fast if fast == fast and fast > 0 else float("nan")
        print(f"{name:<28}{size:<10}{fast:>11.4f}s{pure:>11.4f}s{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
