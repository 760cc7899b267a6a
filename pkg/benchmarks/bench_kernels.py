#!/usr/bin/env python3
"""Benchmark the compiled counting kernel against the pure-Python fallback.

Runs the full-S_n histogram sweep (the hot loop of every exhaustive
verification) with each backend and reports the speedup.

    python benchmarks/bench_kernels.py [--n 8] [--repeat 3]
"""

from __future__ import annotations

import argparse
import math
import time

from permdyck import _purecount

try:
    from permdyck import _fastcount
except ImportError:
    _fastcount = None


def time_backend(fn, n: int, repeat: int) -> tuple[float, object]:
    best = math.inf
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(n)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=8, help="sweep all of S_n")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    n, repeat = args.n, args.repeat
    print(f"histogram sweep over S_{n} ({math.factorial(n):,} permutations), best of {repeat}")

    pure_time, pure_result = time_backend(_purecount.histogram_pair, n, repeat)
    rate = math.factorial(n) / pure_time
    print(f"  pure python : {pure_time * 1e3:10.1f} ms   ({rate:,.0f} perms/s)")

    if _fastcount is None:
        print("  compiled    : extension not built (pip install -e . with Cython)")
        return 0

    fast_time, fast_result = time_backend(_fastcount.histogram_pair, n, repeat)
    rate = math.factorial(n) / fast_time
    print(f"  compiled    : {fast_time * 1e3:10.1f} ms   ({rate:,.0f} perms/s)")
    print(f"  speedup     : {pure_time / fast_time:10.1f} x")

    if tuple(map(tuple, pure_result)) != tuple(map(tuple, fast_result)):
        print("  MISMATCH between backends!")
        return 1
    print("  results identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
