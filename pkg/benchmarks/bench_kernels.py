"""Compare the compiled kernels against the pure-numpy fallback.

Run as: python3 benchmarks/bench_kernels.py

Times the hot paths on representative workloads: full-group BFS, parent
derivation, exhaustive bumpiness counting, and the Monte Carlo band counts.
The compiled path is warmed once before timing so JIT compilation is not
billed to the measurement.
"""

import time

import numpy as np

from permword import _kernels
from permword.bumpiness import threshold_band, VERY_BUMPY
from permword.stats import _sample_delta_matrix


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    have_numba = _kernels.BACKEND == "numba" or hasattr(
        _kernels, "bfs_distances_numba"
    )
    if not have_numba:
        print("compiled backend unavailable; timing the numpy fallback only")

    lo8, hi8 = threshold_band(8, VERY_BUMPY.b)
    deltas = _sample_delta_matrix(512, 2000, 7)
    lo512, hi512 = threshold_band(512, VERY_BUMPY.b)
    dist8 = _kernels.bfs_distances_numpy(8)

    jobs = [
        ("bfs n=8 (40320 states)", "bfs_distances", (8,)),
        ("bfs n=9 (362880 states)", "bfs_distances", (9,)),
        ("parents n=8", "parent_letters", (8, dist8)),
        (
            "exhaustive bumpy n=8",
            "count_bumpy_exhaustive",
            (8, lo8, hi8, VERY_BUMPY.c.numerator, VERY_BUMPY.c.denominator),
        ),
        ("band counts 2000 x n=512", "min_band_counts", (deltas, lo512, hi512)),
    ]

    header = f"{'kernel':<28} {'numpy':>10} {'numba':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, name, args in jobs:
        np_time, np_out = timed(getattr(_kernels, f"{name}_numpy"), *args)
        if have_numba:
            fn = getattr(_kernels, f"{name}_numba")
            fn(*args)  # warm the JIT before timing
            nb_time, nb_out = timed(fn, *args)
            same = (
                np.array_equal(np_out, nb_out)
                if isinstance(np_out, np.ndarray)
                else np_out == nb_out
            )
            flag = "" if same else "  MISMATCH"
            print(
                f"{label:<28} {np_time * 1e3:>8.1f}ms {nb_time * 1e3:>8.1f}ms "
                f"{np_time / nb_time:>8.1f}x{flag}"
            )
        else:
            print(f"{label:<28} {np_time * 1e3:>8.1f}ms {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
