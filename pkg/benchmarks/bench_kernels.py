"""Benchmark the compiled reduction kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Workloads: a batch of small random matrices (the shape the property suite
hammers), one mid-size dense random matrix, and the stacked transition
matrix of the (5,13) quaternion complex (the shape the pipeline hammers).
"""

import argparse
import random
import time

from treelat import _kernels_py
from treelat.cli import analyze_document
from treelat.mozes import generate_mozes_complex
from treelat.tiling_system import stacked_matrix

try:
    from treelat import _kernels
except ImportError:
    _kernels = None


def batch_8x8(rng):
    return [
        [[rng.randint(-9, 9) for _ in range(8)] for _ in range(8)] for _ in range(300)
    ]


def make_workloads():
    rng = random.Random(12345)
    small = batch_8x8(rng)
    mid = [[rng.randint(-20, 20) for _ in range(40)] for _ in range(40)]
    _, analysis = analyze_document(generate_mozes_complex(5, 13))
    stacked = stacked_matrix(analysis.tiling).to_lists()
    return [
        ("snf 300 x (8x8)", lambda impl: [impl.snf_with_transforms(a) for a in small]),
        ("snf 40x40", lambda impl: impl.snf_with_transforms(mid)),
        ("snf stacked 168x84", lambda impl: impl.snf_with_transforms(stacked)),
        ("hermite stacked", lambda impl: impl.hermite_rows(stacked)),
    ]


def best_of(fn, impl, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(impl)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    workloads = make_workloads()
    print(f"{'workload':<22} {'pure [s]':>10} {'compiled [s]':>13} {'speedup':>8}")
    for name, fn in workloads:
        pure = best_of(fn, _kernels_py, args.repeat)
        if _kernels is None:
            print(f"{name:<22} {pure:>10.4f} {'not built':>13} {'-':>8}")
            continue
        fast = best_of(fn, _kernels, args.repeat)
        # identical schedules must give identical results
        assert fn(_kernels) == fn(_kernels_py)
        print(f"{name:<22} {pure:>10.4f} {fast:>13.4f} {pure / fast:>8.2f}x")


if __name__ == "__main__":
    main()
