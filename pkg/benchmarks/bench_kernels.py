"""Compare the numba and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly, so the ``COOPAF_DISABLE_NUMBA`` flag does
not matter here. Outputs are checked for equality before timing. Numba
compilation happens in a warm-up call and is reported separately.
"""
import argparse
import random
import time
from fractions import Fraction
from math import comb

import numpy as np

from coopaf import _kernels
from coopaf.correspondence import _scaled_values
from coopaf.game import canonical_game
from coopaf.imputation import iter_grid_numerators


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def witness_case(d):
    g = canonical_game(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    nums = np.array(list(iter_grid_numerators(3, d)), dtype=np.int64)
    scale, rhs = _scaled_values(g, d)
    return f"witness_matrix d={d} ({comb(d + 2, 2)} pts)", (nums, np.array(rhs, dtype=np.int64), scale)


def subset_case(n, seed=0):
    rng = random.Random(seed)
    targets = np.array([sum(1 << j for j in range(n) if rng.random() < 0.2) for _ in range(n)], dtype=np.int64)
    return f"subset_codes n={n}", (targets, n)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    cases = [(witness_case(d), _kernels.witness_matrix_numba, _kernels.witness_matrix_numpy) for d in (20, 40, 80)]
    cases += [(subset_case(n), _kernels.subset_codes_numba, _kernels.subset_codes_numpy) for n in (12, 16, 20)]

    print(f"{'case':<34}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for (label, call_args), fast, slow in cases:
        t = time.perf_counter()
        a = fast(*call_args)
        compile_s = time.perf_counter() - t
        assert np.array_equal(a, slow(*call_args)), label
        tn = best_of(lambda: fast(*call_args), args.repeat)
        tp = best_of(lambda: slow(*call_args), args.repeat)
        print(f"{label:<34}{tn * 1e3:10.2f}ms{tp * 1e3:10.2f}ms{tp / tn:9.1f}x"
              f"   (first numba call {compile_s * 1e3:.0f} ms)")


if __name__ == "__main__":
    main()
