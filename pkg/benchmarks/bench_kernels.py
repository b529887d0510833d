"""Time the numba and numpy row reductions on random dense matrices mod p.

Run with ``python benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]``.
"""
import argparse
import time

import numpy as np

from sagalg._kernels import HAS_NUMBA, rref_mod_p

P = 2147483647


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    if HAS_NUMBA:
        rref_mod_p(np.eye(2, dtype=np.int64), P, use_jit=True)  # compile outside the timing
    print(f"{'n':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.sizes:
        a = rng.integers(0, P, size=(n, n), dtype=np.int64)
        t_np = best_of(lambda: rref_mod_p(a, P, use_jit=False), args.repeat)
        if HAS_NUMBA:
            r1 = rref_mod_p(a, P, use_jit=False)
            r2 = rref_mod_p(a, P, use_jit=True)
            assert np.array_equal(r1[0], r2[0]) and np.array_equal(r1[1], r2[1])
            t_jit = best_of(lambda: rref_mod_p(a, P, use_jit=True), args.repeat)
            print(f"{n:>6} {t_np:>10.4f} {t_jit:>10.4f} {t_np / t_jit:>8.1f}")
        else:
            print(f"{n:>6} {t_np:>10.4f} {'n/a':>10} {'':>8}")


if __name__ == "__main__":
    main()
