"""64-bit Mersenne Twister (MT19937-64), compiled for bulk generation.

Matches the reference mt19937-64 recurrence: 312-word state, seed
initialization with the 6364136223846793005 multiplier, and the 64-bit
tempering sequence. Every generator in :mod:`zsort.datagen` draws raw words
from this engine so that a spec (kind, size, seed, params) always reproduces
the same byte-identical key sequence.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_NN = 312
_MM = 156
_MATRIX_A = np.uint64(0xB5026F5AA96619E9)
_UPPER_MASK = np.uint64(0xFFFFFFFF80000000)
_LOWER_MASK = np.uint64(0x7FFFFFFF)
_INIT_MULT = np.uint64(6364136223846793005)
_ONE = np.uint64(1)


@njit(cache=True)
def _fill(seed, out):
    mt = np.empty(_NN, np.uint64)
    mt[0] = np.uint64(seed)
    for i in range(1, _NN):
        mt[i] = _INIT_MULT * (mt[i - 1] ^ (mt[i - 1] >> np.uint64(62))) + np.uint64(i)
    mti = _NN
    for j in range(out.size):
        if mti >= _NN:
            for i in range(_NN - _MM):
                x = (mt[i] & _UPPER_MASK) | (mt[i + 1] & _LOWER_MASK)
                mt[i] = mt[i + _MM] ^ (x >> _ONE) ^ ((x & _ONE) * _MATRIX_A)
            for i in range(_NN - _MM, _NN - 1):
                x = (mt[i] & _UPPER_MASK) | (mt[i + 1] & _LOWER_MASK)
                mt[i] = mt[i + _MM - _NN] ^ (x >> _ONE) ^ ((x & _ONE) * _MATRIX_A)
            x = (mt[_NN - 1] & _UPPER_MASK) | (mt[0] & _LOWER_MASK)
            mt[_NN - 1] = mt[_MM - 1] ^ (x >> _ONE) ^ ((x & _ONE) * _MATRIX_A)
            mti = 0
        x = mt[mti]
        mti += 1
        x ^= (x >> np.uint64(29)) & np.uint64(0x5555555555555555)
        x ^= (x << np.uint64(17)) & np.uint64(0x71D67FFFEDA60000)
        x ^= (x << np.uint64(37)) & np.uint64(0xFFF7EEE000000000)
        x ^= x >> np.uint64(43)
        out[j] = x


def fill_raw(seed: int, count: int) -> np.ndarray:
    """Return ``count`` consecutive raw 64-bit words for ``seed``."""
    if not (0 <= seed < 2**64):
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    out = np.empty(count, np.uint64)
    if count:
        _fill(np.uint64(seed), out)
    return out
