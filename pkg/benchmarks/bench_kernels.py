#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Run after installing the package:

    python benchmarks/bench_kernels.py

Times the scalar hot paths (exp-tail remainder, Lambert W, and the
poly-exp root scan) on both backends and prints per-call timings with the
speedup of the compiled extension.
"""

import math
import time

from tailbound._kernels import _pyfallback

try:
    from tailbound._kernels import _native
except ImportError:
    _native = None


def time_call(fn, loops):
    start = time.perf_counter()
    for _ in range(loops):
        fn()
    return (time.perf_counter() - start) / loops


def bench_taylor(mod):
    def run():
        total = 0.0
        for x in (-8.0, -1.0, 0.5, 2.0, 12.0):
            for p in (1, 3, 6):
                total += mod.taylor_remainder(p, x)
        return total
    return run


def bench_lambert(mod):
    def run():
        total = 0.0
        for x in (0.1, 1.0, 25.0, 4e3, 1e8):
            total += mod.lambert_w0(x)
        return total
    return run


def bench_scan(mod):
    alpha = (7.5, 1.2, -0.8, 0.05)

    def run():
        return mod.poly_exp_scan(alpha, 50.0, 0.05, 1e-12)
    return run


CASES = [
    ("taylor_remainder x15", bench_taylor, 20_000),
    ("lambert_w0 x5", bench_lambert, 20_000),
    ("poly_exp_scan (1k cells)", bench_scan, 500),
]


def main():
    print(f"{'kernel':<28}{'python':>12}{'native':>12}{'speedup':>10}")
    for name, factory, loops in CASES:
        py = time_call(factory(_pyfallback), loops)
        if _native is None:
            print(f"{name:<28}{py * 1e6:>10.2f}us{'n/a':>12}{'':>10}")
            continue
        nat = time_call(factory(_native), loops)
        print(f"{name:<28}{py * 1e6:>10.2f}us{nat * 1e6:>10.2f}us"
              f"{py / nat:>9.1f}x")
    if _native is None:
        print("\ncompiled extension not available; showing fallback only")


if __name__ == "__main__":
    main()
