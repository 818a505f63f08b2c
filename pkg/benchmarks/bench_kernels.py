"""Compare the numba and pure-numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import math
import timeit

import numpy as np

from dkpo_lab import kernels
from dkpo_lab._accel import HAVE_NUMBA


def best_of(fn, repeat):
    fn()  # warm-up, includes JIT compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    x = np.linspace(0.0, 50.0, 1_000_000)
    # gamma=0.01, delta=0: the heaviest exact-sum component in the acceptance grid
    sum_args = (0.01, 2.0, 2.0, 0.0, 0, 20_000_000)
    cases = [
        ("laguerre n=20 k=10, 1e6 points",
         lambda: kernels.laguerre_numpy(20, 10, x), lambda: kernels.laguerre_numba(20, 10, x)),
        ("exp-sqrt sum, 2e7 terms",
         lambda: kernels.weighted_exp_sqrt_numpy(*sum_args),
         lambda: kernels.weighted_exp_sqrt_numba(*sum_args)),
    ]
    print(f"{'kernel':34s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s} {'max rel diff':>13s}")
    for name, f_np, f_nb in cases:
        t_np, t_nb = best_of(f_np, args.repeat), best_of(f_nb, args.repeat)
        a, b = np.asarray(f_np(), dtype=float), np.asarray(f_nb(), dtype=float)
        diff = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), math.ulp(0.0))))
        print(f"{name:34s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f} {diff:13.2e}")


if __name__ == "__main__":
    main()
