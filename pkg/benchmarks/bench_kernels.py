"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

JIT compilation (or cache load) happens in a warm-up call and is excluded.
"""

import argparse
import time

import numpy as np

from oddclass import _kernels

DISCS = [-4 * 250007, -9999991, -4 * 24999997, -99999787]
TRIAL = [10**12 + 39, 999983 * 999979, 3**35 - 4, 47**9 - 100]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.USE_NUMBA:
        raise SystemExit("numba backend disabled; nothing to compare")

    primes = _kernels.prime_sieve(10**6)
    _kernels.reduced_forms_array(-23, "numba")
    _kernels.trial_divide(12, primes, "numba")

    print(f"{'kernel':<28}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for D in DISCS:
        a = _kernels.reduced_forms_array(D, "numpy")
        b = _kernels.reduced_forms_array(D, "numba")
        assert np.array_equal(np.sort(a, axis=0), np.sort(b, axis=0))
        tn = best_of(lambda: _kernels.reduced_forms_array(D, "numpy"), args.repeat)
        tj = best_of(lambda: _kernels.reduced_forms_array(D, "numba"), args.repeat)
        print(f"{'forms D=' + str(D):<28}{tn:>10.4f}{tj:>10.4f}{tn / tj:>8.1f}x")
    for n in TRIAL:
        assert _kernels.trial_divide(n, primes, "numpy") == _kernels.trial_divide(n, primes, "numba")
        tn = best_of(lambda: _kernels.trial_divide(n, primes, "numpy"), args.repeat)
        tj = best_of(lambda: _kernels.trial_divide(n, primes, "numba"), args.repeat)
        print(f"{'trial n=' + str(n):<28}{tn:>10.4f}{tj:>10.4f}{tn / tj:>8.1f}x")


if __name__ == "__main__":
    main()
