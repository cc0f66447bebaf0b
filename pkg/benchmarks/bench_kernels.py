"""Compare the numba and numpy kernels for sparse Laurent multiplication and addition.

Usage:  python benchmarks/bench_kernels.py [--repeat 20] [--seed 0]

Both backends are imported directly, so WITTRAM_NUMBA does not matter here.
Each case multiplies two random sparse polynomials with coefficients in
Z/p^k[z]/(modulus) and checks that the two backends agree before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from wittram.algebra.fields import fq_construct
from wittram.kernels import _numpy

try:
    from wittram.kernels import _numba
except ImportError:
    _numba = None

CASES = [
    # (p, f, k, terms per operand, exponent spread)
    (2, 1, 3, 40, 200),
    (3, 2, 3, 60, 400),
    (3, 4, 2, 200, 2000),
    (5, 1, 4, 400, 4000),
    (3, 9, 3, 120, 600),
]


def random_operand(rng, terms, spread, f, pk):
    exps = np.sort(rng.choice(np.arange(-spread // 4, spread), size=terms, replace=False)).astype(np.int64)
    coeffs = rng.integers(0, pk, size=(terms, f), dtype=np.int64)
    coeffs[~coeffs.any(axis=1), 0] = 1
    return exps, coeffs


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if _numba is None:
        print("numba is not installed; only the numpy backend can be timed")
    rng = np.random.default_rng(args.seed)

    print(f"{'case':<26}{'op':<6}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}")
    for p, f, k, terms, spread in CASES:
        modulus = fq_construct(p, f).modulus_array()
        pk = p ** k
        a = random_operand(rng, terms, spread, f, pk)
        b = random_operand(rng, terms, spread, f, pk)
        label = f"p={p} f={f} k={k} t={terms}"
        ops = {
            "mul": (lambda m: m.sparse_mul(a[0], a[1], b[0], b[1], modulus, pk)),
            "add": (lambda m: m.sparse_add(a[0], a[1], b[0], b[1], pk)),
        }
        for name, op in ops.items():
            ref = op(_numpy)
            t_np = best_time(lambda: op(_numpy), args.repeat)
            if _numba is None:
                print(f"{label:<26}{name:<6}{t_np * 1e3:>10.3f}{'-':>10}{'-':>9}")
                continue
            got = op(_numba)  # first call also triggers compilation
            if not (np.array_equal(ref[0], got[0]) and np.array_equal(ref[1], got[1])):
                raise SystemExit(f"backends disagree on {label} {name}")
            t_nb = best_time(lambda: op(_numba), args.repeat)
            print(f"{label:<26}{name:<6}{t_np * 1e3:>10.3f}{t_nb * 1e3:>10.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
