"""Compare the compiled and numpy rank kernels, and time the diagonalizers.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeat 5 --trials 200000
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from fqrank.diagonalize import greedy_parallel, greedy_single
from fqrank.gf import GF
from fqrank.kernels import available_backends
from fqrank.pattern import SupportPattern, has_full_rank_realization, sample_values


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_exact(backends, repeat):
    print("exhaustive enumeration (count_range)")
    print(f"  {'case':22} " + " ".join(f"{name:>10}" for name in backends) + "   speedup")
    for q, n, k in [(2, 3, 3), (2, 4, 4), (3, 3, 3), (4, 2, 5), (8, 2, 3)]:
        F = GF(q)
        b = SupportPattern.full(n, k)
        total = q ** b.weight()
        times, counts = {}, set()
        for name, be in backends.items():
            args = (n, k, b.flat_positions(), F.p, F.m, F.exp, F.log, 0, total)
            times[name], c = best_of(lambda: be.count_range(*args), repeat)
            counts.add(c)
        assert len(counts) == 1, f"backends disagree on {n}x{k} GF({q})"
        print(f"  {f'GF({q}) {n}x{k} ({total})':22} " + " ".join(f"{t:10.4f}" for t in times.values())
              + _speedup(times))


def bench_mc(backends, trials, repeat):
    print(f"Monte Carlo rank counting (count_values, {trials} samples)")
    print(f"  {'case':22} " + " ".join(f"{name:>10}" for name in backends) + "   speedup")
    for q, n, k in [(2, 3, 3), (2, 8, 8), (256, 4, 4), (256, 8, 12)]:
        F = GF(q)
        b = SupportPattern.full(n, k)
        vals = sample_values(b, F, 1, 0, trials)
        times, counts = {}, set()
        for name, be in backends.items():
            times[name], c = best_of(
                lambda: be.count_values(n, k, b.flat_positions(), vals, F.p, F.m, F.exp, F.log), repeat)
            counts.add(c)
        assert len(counts) == 1, f"backends disagree on {n}x{k} GF({q})"
        print(f"  {f'GF({q}) {n}x{k}':22} " + " ".join(f"{t:10.4f}" for t in times.values()) + _speedup(times))


def _speedup(times):
    if "cython" in times and "python" in times:
        return f"   {times['python'] / times['cython']:7.1f}x"
    return ""


def bench_diag(repeat, density):
    print(f"diagonalizers on random patterns (density {density})")
    print(f"  {'n':>3} {'single':>10} {'parallel':>10}")
    rng = random.Random(0)
    F = GF(2)
    for n in (4, 6, 8, 12, 16):
        while True:
            rows = [[int(rng.random() < density) for _ in range(n)] for _ in range(n)]
            b = SupportPattern.from_rows(rows)
            if has_full_rank_realization(b):
                break
        t1, _ = best_of(lambda: greedy_single(b), repeat)
        t2, _ = best_of(lambda: greedy_parallel(b, F), repeat)
        print(f"  {n:>3} {t1:10.4f} {t2:10.4f}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--density", type=float, default=0.5)
    ap.add_argument("--skip-diag", action="store_true")
    args = ap.parse_args(argv)

    backends = dict(sorted(available_backends().items()))
    print("backends:", ", ".join(backends), "| numpy", np.__version__)
    bench_exact(backends, args.repeat)
    bench_mc(backends, args.trials, args.repeat)
    if not args.skip_diag:
        bench_diag(args.repeat, args.density)


if __name__ == "__main__":
    main()
