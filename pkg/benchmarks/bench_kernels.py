#!/usr/bin/env python3
"""Compare the numba-jitted kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [--repeat N]

The backend is forced per measurement through GUESSLAB_KERNELS, so the
timings reflect exactly what library users get with each setting.
"""

import argparse
import os
import time

import numpy as np

from guesslab import _kernels
from guesslab.coding import min_net
from guesslab.digraph import Digraph, symmetrized


def force(backend):
    os.environ["GUESSLAB_KERNELS"] = backend


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_fixed_points(repeat):
    g = symmetrized(Digraph.of(10, [(i, (i + 1) % 10) for i in range(10)]))
    f = min_net(g, 3)  # 3**10 = 59049 states

    def run():
        return int(_kernels.fixed_point_mask(f.n, f.q, f.supports, f.tables).sum())

    return "fixed_point_mask (3^10 states)", run


def bench_ranks(repeat):
    rng = np.random.default_rng(0)
    mats = rng.integers(0, 3, size=(200_000, 5, 5), dtype=np.int64)

    def run():
        return int(_kernels.modular_ranks(mats.copy(), 3).sum())

    return "modular_ranks (200k 5x5 mod 3)", run


def bench_ids(repeat):
    big = Digraph.of(18, {(u % 18, (u * 7 + 3) % 18) for u in range(90)} - {(v, v) for v in range(18)})
    in_masks = big.in_masks()
    need = [1 if big.in_degree(v) > 0 else 0 for v in range(big.n)]

    def run():
        return int(_kernels.ids_size_counts(in_masks, need, big.n).sum())

    return "ids_size_counts (2^18 subsets)", run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    benches = [bench_fixed_points(args.repeat), bench_ranks(args.repeat), bench_ids(args.repeat)]
    rows = []
    for name, run in benches:
        results = {}
        for backend in ("numpy", "numba"):
            if backend == "numba" and not _kernels.HAS_NUMBA:
                results[backend] = (float("nan"), None)
                continue
            force(backend)
            run()  # warm-up (jit compile / cache touch)
            results[backend] = timed(run, args.repeat)
        t_np, r_np = results["numpy"]
        t_nb, r_nb = results["numba"]
        if r_nb is not None and r_np != r_nb:
            raise AssertionError(f"{name}: backends disagree ({r_np} vs {r_nb})")
        rows.append((name, t_np, t_nb))

    print(f"{'kernel':<34} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, t_np, t_nb in rows:
        speed = t_np / t_nb if t_nb and t_nb == t_nb else float("nan")
        print(f"{name:<34} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms {speed:>8.1f}x")


if __name__ == "__main__":
    main()
