"""Compare the numba and numpy backends of the hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from lorenzhole import _accel


def best_of(fn, repeat: int) -> float:
    fn()  # warm-up (includes JIT compilation)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    for n in (16, 64, 256):
        a = (rng.random((n, n)) < 0.2).astype(float)
        a[np.arange(n), (np.arange(n) + 1) % n] = 1.0
        yield f"power_radius n={n}", lambda a=a, b=None: _accel.power_radius(a, backend=b)
    beta = (1 + 5**0.5) / 2
    alpha = 1 - beta / 2
    c = (1 - alpha) / beta
    for m in (10_000, 100_000):
        xs = np.linspace(0, 1, m)
        yield (
            f"escape_times points={m} iters=1000",
            lambda xs=xs, b=None: _accel.escape_times(xs, beta, alpha, c, c - 0.01, c + 0.01, 1000, backend=b),
        )


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba available: {_accel.HAVE_NUMBA}")
    print(f"{'kernel':<40}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, fn in cases():
        t_np = best_of(lambda: fn(b="numpy"), args.repeat)
        if _accel.HAVE_NUMBA:
            t_nb = best_of(lambda: fn(b="numba"), args.repeat)
            print(f"{name:<40}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>10.1f}")
        else:
            print(f"{name:<40}{t_np:>12.5f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
