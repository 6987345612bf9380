import os
import random
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from coopaf import _kernels
from coopaf.af import Framework, arg_members, is_complete, is_conflict_free, is_stable, is_admissible
from coopaf.game import members
from coopaf.imputation import iter_grid_numerators
from helpers import random_framework, random_normalized_game

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def witness_oracle(nums, values, d):
    P = len(nums)
    m = len(nums[0])
    out = np.zeros((P, P), np.int32)
    for i in range(P):
        for j in range(P):
            for C in range(1, 1 << m):
                ks = [k - 1 for k in members(C)]
                if all(nums[i][k] > nums[j][k] for k in ks) and \
                        Fraction(sum(nums[i][k] for k in ks), d) <= values[C]:
                    out[i, j] = C
                    break
    return out


def _grid_inputs(g, d):
    from math import lcm
    nums = list(iter_grid_numerators(g.m, d))
    scale = lcm(*(v.denominator for v in g.values))
    rhs = [int(v * scale) * d for v in g.values]
    return nums, np.array(nums, np.int64), np.array(rhs, np.int64), scale


@pytest.mark.parametrize("seed", range(6))
def test_witness_matrix_paths_agree_with_oracle(seed):
    rng = random.Random(seed)
    g = random_normalized_game(rng, rng.randint(2, 4))
    d = rng.randint(1, 5)
    nums, arr, rhs, scale = _grid_inputs(g, d)
    expected = witness_oracle(nums, g.values, d)
    np.testing.assert_array_equal(_kernels.witness_matrix_numpy(arr, rhs, scale), expected)
    np.testing.assert_array_equal(_kernels.witness_matrix_numpy(arr, rhs, scale, chunk=3), expected)
    if _kernels.HAVE_NUMBA:
        np.testing.assert_array_equal(_kernels.witness_matrix_numba(arr, rhs, np.int64(scale)), expected)


def subset_oracle(f):
    codes = []
    for S in range(1 << f.n_args):
        code = 0
        if is_conflict_free(S, f):
            code |= _kernels.CONFLICT_FREE
        if is_admissible(S, f):
            code |= _kernels.ADMISSIBLE
        if is_complete(S, f):
            code |= _kernels.COMPLETE
        if is_stable(S, f):
            code |= _kernels.STABLE
        codes.append(code)
    return np.array(codes, np.int8)


@pytest.mark.parametrize("seed", range(8))
def test_subset_codes_paths_agree_with_oracle(seed):
    rng = random.Random(100 + seed)
    f = random_framework(rng, rng.randint(0, 9))
    targets = np.array(f.targets, np.int64)
    expected = subset_oracle(f)
    np.testing.assert_array_equal(_kernels.subset_codes_numpy(targets, f.n_args), expected)
    if _kernels.HAVE_NUMBA:
        np.testing.assert_array_equal(_kernels.subset_codes_numba(targets, f.n_args), expected)


def test_overflow_guard():
    assert _kernels.fits_int64(2**61)
    assert not _kernels.fits_int64(2**62)
    assert not _kernels.fits_int64(3, -(2**63))


def test_subset_codes_limit():
    with pytest.raises(ValueError):
        _kernels.subset_codes(np.zeros(31, np.int64), 31)


def _backend_under(env_value):
    env = dict(os.environ)
    env["COOPAF_DISABLE_NUMBA"] = env_value
    out = subprocess.run([sys.executable, "-c", "from coopaf import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_env_flag_selects_numpy():
    assert _backend_under("1") == "numpy"


@needs_numba
def test_default_backend_is_numba():
    assert _backend_under("") == "numba"
