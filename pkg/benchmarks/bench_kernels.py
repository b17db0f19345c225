"""Compare the compiled folding kernel with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--points 20000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from qgfusion import kernels
from qgfusion.fusion import LevelContext, build_fusion_ring

CASES = [("G2", 200), ("F4", 99), ("E8", 34), ("B6", 61)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_fold(n_points, repeat):
    print(f"fold_points on {n_points} random shifted weights (best of {repeat})")
    print(f"{'type':<6}{'level':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for ct, level in CASES:
        ctx = LevelContext(ct, level)
        rng = np.random.default_rng(0)
        pts = rng.integers(-3 * level, 3 * level, size=(n_points, ctx.rs.rank))
        div, vec = ctx.affine_step
        args = (pts, ctx.rs.cartan_matrix, ctx.wall_pairing, level, div, vec)
        tp = best_of(lambda: kernels.python_fold_points(*args), repeat)
        if kernels.compiled_fold_points is None:
            print(f"{ct:<6}{level:>6}{tp:>12.4f}{'-':>12}{'-':>10}")
            continue
        tc = best_of(lambda: kernels.compiled_fold_points(*args), repeat)
        print(f"{ct:<6}{level:>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


def bench_ring(repeat):
    print(f"\nbuild_fusion_ring end to end (best of {repeat})")
    for ct, level in [("F4", 21), ("G2", 29)]:
        ctx = LevelContext(ct, level)
        row = [f"{ct}@{level}"]
        for name, fn in [("python", kernels.python_fold_points), ("cython", kernels.compiled_fold_points)]:
            if fn is None:
                continue
            saved = kernels.fold_points
            kernels.fold_points = fn
            try:
                t = best_of(lambda: build_fusion_ring(ctx), repeat)
            finally:
                kernels.fold_points = saved
            row.append(f"{name} {t:.3f}s")
        print("  ".join(row))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    bench_fold(args.points, args.repeat)
    bench_ring(args.repeat)


if __name__ == "__main__":
    main()
