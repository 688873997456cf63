"""Time the compiled kernels against the numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints best-of-``repeat`` wall times and the speedup of the compiled core.
Both Hankel kernels are compensated (TwoSum per output); an uncompensated
BLAS product is timed alongside as the floor that compensation gives up.
``power_sums`` has no compiled version; its numpy (BLAS) timing is shown for
reference.
"""
import argparse
import timeit

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from genhilbert import _kernels_py

try:
    from genhilbert import _kernels as compiled
except ImportError:
    compiled = None


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def cases():
    rng = np.random.default_rng(0)
    for K, n_out in ((200, 800), (1600, 6400), (3200, 12800)):
        mu = 1.0 / np.arange(1.0, n_out + K + 2)
        a = rng.standard_normal(K + 1)
        yield f"hankel_direct K={K} N_out={n_out}", "hankel_direct", (mu, a, n_out)
    for deg, npts in ((20, 100_000), (400, 20_000), (3000, 4_096)):
        c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        z = 0.9 * np.exp(2j * np.pi * rng.uniform(size=npts))
        yield f"horner deg={deg} points={npts}", "horner", (c, z)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"{'kernel':40s} {'numpy [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for label, name, call_args in cases():
        t_py = best(lambda: getattr(_kernels_py, name)(*call_args), args.repeat)
        if compiled is None:
            print(f"{label:40s} {1e3 * t_py:12.2f} {'n/a':>14s} {'':>8s}")
            continue
        t_c = best(lambda: getattr(compiled, name)(*call_args), args.repeat)
        print(f"{label:40s} {1e3 * t_py:12.2f} {1e3 * t_c:14.2f} {t_py / t_c:7.1f}x")
        if name == "hankel_direct":
            mu, a, n_out = call_args
            windows = sliding_window_view(mu[: n_out + a.size], a.size)
            t_blas = best(lambda: windows @ a, args.repeat)
            print(f"{'  uncompensated BLAS reference':40s} {1e3 * t_blas:12.2f}")
    rng = np.random.default_rng(1)
    lt = np.log(rng.uniform(0.0, 1.0, 41 * 16))
    w = rng.uniform(size=lt.size)
    t_ps = best(lambda: _kernels_py.power_sums(lt, w, 200_000), args.repeat)
    print(f"{'power_sums nodes=656 N=200000 (BLAS)':40s} {1e3 * t_ps:12.2f} {'n/a':>14s}")


if __name__ == "__main__":
    main()
