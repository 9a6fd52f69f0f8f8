"""Meet/join closure of integer vectors: numba kernel against the numpy fallback.

The workload is the hot step of symmetric suboperad generation over the
multi-index operad: close the S_n-orbit of all composites of (1,1) at arity n
inside the box [1, n-1]^n.  Both backends must return the same array.

    python benchmarks/bench_closure.py [--nmax 6] [--repeat 3]
"""
import argparse
import time

import numpy as np

from latop import kernels
from latop._util import all_perms
from latop.operad_zoo.multi_index import mz


def seeds(n):
    """Orbit of the left comb (1,2,..,n-1,n-1) plus a few composites, enough to generate everything."""
    op = mz()
    comb = (1, 1)
    for k in range(3, n + 1):
        comb = op.compose(comb, 1, (1, 1))
    rows = {tuple(comb[s - 1] for s in p) for p in all_perms(n)}
    return np.array(sorted(rows), dtype=np.int64)


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy path runs")
    print(f"{'n':>2} {'seed':>6} {'closed':>8} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for n in range(3, args.nmax + 1):
        rows = seeds(n)
        lo, hi = 1, n - 1
        if kernels.HAVE_NUMBA:
            kernels.lattice_closure(rows[:2], lo, hi, use="numba")  # compile outside the timing
            t_nb, a = timed(lambda: kernels.lattice_closure(rows, lo, hi, use="numba"), args.repeat)
        t_np, b = timed(lambda: kernels.lattice_closure(rows, lo, hi, use="numpy"), args.repeat)
        if kernels.HAVE_NUMBA:
            assert np.array_equal(a, b), "backends disagree"
            print(f"{n:>2} {len(rows):>6} {len(b):>8} {t_nb:>9.4f} {t_np:>9.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{n:>2} {len(rows):>6} {len(b):>8} {'-':>9} {t_np:>9.4f} {'-':>8}")


if __name__ == "__main__":
    main()
