"""Compare the numba kernels with the numpy/python fallback.

    python3 benchmarks/bench_kernels.py --n 7 8 9 --repeat 3

The first numba call per n compiles (or loads the on-disk cache); that
warm-up is excluded from the timings.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from cayleydiam import _kernels as K
from cayleydiam.tree import caterpillar_tree


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[7, 8, 9])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-ak-python", type=int, default=8, help="skip the python AK sweep above this n")
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba not installed; nothing to compare")
        return 1

    print(f"{'kernel':<10}{'n':>3}{'numba s':>11}{'numpy s':>11}{'speedup':>9}")
    for n in args.n:
        t = caterpillar_tree(n) if n >= 5 else None
        if t is None:
            continue
        gens = np.array(t.edges, dtype=np.int64) - 1
        dist0 = t.zero_based_dist()
        edges0 = np.array(t.edges) - 1
        jobs = {
            "bfs": lambda u: K.bfs_distances(n, gens, use_numba=u),
            "f_sweep": lambda u: K.f_values(dist0, use_numba=u),
            "ak": lambda u: K.ak_lengths(dist0, t.next_hop, edges0, use_numba=u),
        }
        for name, job in jobs.items():
            job(True)  # warm-up / compile
            fast = best_of(lambda: job(True), args.repeat)
            if name == "ak" and n > args.skip_ak_python:
                print(f"{name:<10}{n:>3}{fast:>11.3f}{'skipped':>11}{'':>9}")
                continue
            slow = best_of(lambda: job(False), 1 if name == "ak" else args.repeat)
            print(f"{name:<10}{n:>3}{fast:>11.3f}{slow:>11.3f}{slow / fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
