"""Hot integer kernels, with numba and pure-numpy implementations.

Both kernels work on exact integers only: grid payoffs are numerators over a
common denominator and coalition values are scaled to integers, so the
comparison ``sum(x over C) <= v(C)`` becomes an int64 comparison. Callers
are responsible for the overflow guard (:func:`fits_int64`).

The numba path is used unless numba is missing or ``COOPAF_DISABLE_NUMBA``
is set (see :mod:`coopaf.config`).
"""
import numpy as np

from .config import numba_disabled

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not numba_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"

INT64_LIMIT = 1 << 62

CONFLICT_FREE = 1
ADMISSIBLE = 2
COMPLETE = 4
STABLE = 8


def fits_int64(*magnitudes: int) -> bool:
    return all(abs(int(v)) < INT64_LIMIT for v in magnitudes)


# --- domination witnesses -------------------------------------------------

def _witness_loops(nums, rhs, scale):
    P, m = nums.shape
    nc = rhs.shape[0]
    afford = np.zeros((P, nc), np.bool_)
    for i in range(P):
        for C in range(1, nc):
            s = 0
            for k in range(m):
                if (C >> k) & 1:
                    s += nums[i, k]
            afford[i, C] = s * scale <= rhs[C]
    out = np.zeros((P, P), np.int32)
    for i in range(P):
        for j in range(P):
            better = 0
            for k in range(m):
                if nums[i, k] > nums[j, k]:
                    better |= 1 << k
            if better == 0:
                continue
            for C in range(1, nc):
                if (C & better) == C and afford[i, C]:
                    out[i, j] = C
                    break
    return out


def witness_matrix_numpy(nums, rhs, scale, chunk=512):
    """``out[i, j]`` = smallest coalition through which point i dominates point j, else 0.

    ``nums`` is ``(P, m)`` int64 payoff numerators, ``rhs[C]`` the scaled
    coalition value, and ``scale`` the factor applied to payoff sums.
    """
    nums = np.ascontiguousarray(nums, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    P, m = nums.shape
    nc = rhs.shape[0]
    masks = np.arange(nc, dtype=np.int64)
    member = (masks[:, None] >> np.arange(m, dtype=np.int64)) & 1
    afford = (nums @ member.T) * scale <= rhs[None, :]
    afford[:, 0] = False
    weights = np.int64(1) << np.arange(m, dtype=np.int64)
    out = np.zeros((P, P), np.int32)
    for start in range(0, P, chunk):
        blk = nums[start:start + chunk]
        better = ((blk[:, None, :] > nums[None, :, :]) * weights).sum(axis=-1)
        w = np.zeros(better.shape, np.int32)
        # Descending so the smallest qualifying coalition is written last.
        for C in range(nc - 1, 0, -1):
            hit = ((better & C) == C) & afford[start:start + chunk, C][:, None]
            w[hit] = C
        out[start:start + chunk] = w
    return out


# --- exhaustive subset classification ------------------------------------

def _subset_loops(targets, n):
    total = 1 << n
    full = total - 1
    plus = np.zeros(total, np.int64)
    for S in range(1, total):
        low = S & -S
        k = 0
        while (low >> k) != 1:
            k += 1
        plus[S] = plus[S ^ low] | targets[k]
    codes = np.zeros(total, np.int8)
    for S in range(total):
        neutral = full & ~plus[S]
        defended = full & ~plus[neutral]
        code = 0
        if (S & plus[S]) == 0:
            code |= 1
            if (S & ~defended) == 0:
                code |= 2
                if defended == S:
                    code |= 4
            if neutral == S:
                code |= 8
        codes[S] = code
    return codes


def subset_codes_numpy(targets, n):
    """Classify every subset ``S`` of ``n`` arguments by bit flags.

    ``targets[i]`` is the bitmask of arguments attacked by ``i``. Flags:
    CONFLICT_FREE, ADMISSIBLE, COMPLETE, STABLE.
    """
    targets = np.asarray(targets, dtype=np.int64)
    full = np.int64((1 << n) - 1)
    plus = np.zeros(1, np.int64)
    for k in range(n):
        plus = np.concatenate([plus, plus | targets[k]])
    subsets = np.arange(1 << n, dtype=np.int64)
    neutral = full & ~plus
    defended = full & ~plus[neutral]
    cf = (subsets & plus) == 0
    adm = cf & ((subsets & ~defended) == 0)
    codes = (cf * CONFLICT_FREE + adm * ADMISSIBLE + (adm & (defended == subsets)) * COMPLETE
             + (cf & (neutral == subsets)) * STABLE)
    return codes.astype(np.int8)


if HAVE_NUMBA:
    witness_matrix_numba = njit(cache=True)(_witness_loops)
    subset_codes_numba = njit(cache=True)(_subset_loops)
else:  # pragma: no cover
    witness_matrix_numba = None
    subset_codes_numba = None


def witness_matrix(nums, rhs, scale):
    nums = np.ascontiguousarray(nums, dtype=np.int64)
    rhs = np.ascontiguousarray(rhs, dtype=np.int64)
    if USE_NUMBA:
        return witness_matrix_numba(nums, rhs, np.int64(scale))
    return witness_matrix_numpy(nums, rhs, scale)


def subset_codes(targets, n):
    if n > 30:
        raise ValueError("exhaustive subset classification is limited to 30 arguments")
    targets = np.ascontiguousarray(targets, dtype=np.int64)
    if USE_NUMBA:
        return subset_codes_numba(targets, n)
    return subset_codes_numpy(targets, n)
