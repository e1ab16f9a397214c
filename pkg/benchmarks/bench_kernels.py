#!/usr/bin/env python3
"""Timing comparison of the pure-Python and compiled kernel backends.

Run from a checkout as ``python3 benchmarks/bench_kernels.py``; pass
``--repeat`` to stabilize numbers on a noisy machine.  The pure backend is
always available; compiled rows appear when the extension is built.
"""

import argparse
import random
import time

from signlab import _kernels_py as pure

try:
    from signlab import _kernels as fast
except ImportError:
    fast = None


def bench(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def make_cases(seed):
    rng = random.Random(seed)

    wht_vals = [rng.randint(-9, 9) for _ in range(1 << 14)]

    npts = 1 << 4
    full = (1 << npts) - 1
    codes_a = sorted(rng.sample(range(full + 1), 3000))
    codes_b = sorted(rng.sample(range(full + 1), 3000))

    fvals = [rng.choice((-1, 1)) for _ in range(1 << 4)]
    gvals = [rng.choice((-1, 1)) for _ in range(1 << 4)]

    cols = [
        [rng.choice((-1, 1)) for _ in range(16)] for _ in range(11)
    ]

    return [
        ("wht_int 2^14", "wht_int", (wht_vals,)),
        ("combine 3000x3000 (n=4)", "combine_tables", (codes_a, codes_b)),
        ("compose 4 on 4 blocks", "compose_values", (fvals, gvals, 4, 4)),
        ("sign search 11 cols", "sign_rep_search", (cols, 4)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    opts = ap.parse_args()

    cases = make_cases(opts.seed)
    width = max(len(label) for label, _, _ in cases)
    header = f"{'kernel':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, args in cases:
        t_pure = bench(getattr(pure, name), args, opts.repeat)
        if fast is not None:
            t_fast = bench(getattr(fast, name), args, opts.repeat)
            assert getattr(fast, name)(*args) == getattr(pure, name)(*args)
            print(
                f"{label:<{width}}  {t_pure * 1e3:>8.2f}ms  {t_fast * 1e3:>8.2f}ms"
                f"  {t_pure / t_fast:>7.1f}x"
            )
        else:
            print(f"{label:<{width}}  {t_pure * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")
    if fast is None:
        print("(compiled backend not built; showing pure timings only)")


if __name__ == "__main__":
    main()
