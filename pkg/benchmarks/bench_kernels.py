"""Compare the numba and pure-numpy kernel paths.

Run: python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from bruhatcells import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"numba available: {_kernels.numba is not None}; default path: {'numba' if _kernels.USE_NUMBA else 'numpy'}")
    print(f"{'kernel':<28}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for n, m in [(3, 100), (3, 10_000), (4, 10_000), (6, 2_000)]:
        g = rng.normal(size=(m, n, n)) + 1j * rng.normal(size=(m, n, n))
        _kernels.qr_positive_numba(g[:2])  # compile outside the timing
        q1, r1, _ = _kernels.qr_positive_numpy(g)
        q2, r2, _ = _kernels.qr_positive_numba(g)
        assert np.allclose(r1, r2, atol=1e-10)
        tn = best_of(lambda: _kernels.qr_positive_numpy(g), args.repeat)
        tj = best_of(lambda: _kernels.qr_positive_numba(g), args.repeat)
        print(f"{f'qr_positive n={n} m={m}':<28}{tn * 1e3:>12.2f}{tj * 1e3:>12.2f}{tn / tj:>10.1f}")
    for l, m in [(3, 200_000), (6, 200_000)]:
        r2 = rng.random((m, l))
        r2 = r2 / (1 - r2)
        e = -np.arange(2, 2 + l, dtype=float)
        _kernels.mc_weights_numba(r2[:2], e)
        assert np.allclose(_kernels.mc_weights_numpy(r2, e), _kernels.mc_weights_numba(r2, e), rtol=1e-12)
        tn = best_of(lambda: _kernels.mc_weights_numpy(r2, e), args.repeat)
        tj = best_of(lambda: _kernels.mc_weights_numba(r2, e), args.repeat)
        print(f"{f'mc_weights l={l} m={m}':<28}{tn * 1e3:>12.2f}{tj * 1e3:>12.2f}{tn / tj:>10.1f}")


if __name__ == "__main__":
    main()
