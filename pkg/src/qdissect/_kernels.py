"""Compiled inner loops for series arithmetic over Z/mZ.

All arrays are int64 holding canonical residues in [0, m).  With m < 2**31
every product of two residues fits in a signed 64-bit word.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def mul_mod(a_idx, a_val, b, m, order):
    out = np.zeros(order + 1, dtype=np.int64)
    for t in range(a_idx.shape[0]):
        i = a_idx[t]
        if i > order:
            break
        ai = a_val[t]
        for j in range(order + 1 - i):
            out[i + j] = (out[i + j] + ai * b[j]) % m
    return out


@njit(cache=True, nogil=True)
def divide_mod(num, d_idx, d_val, inv0, m, order):
    # d_idx[0] == 0 is the unit constant term; the rest are positive and sorted.
    out = np.zeros(order + 1, dtype=np.int64)
    nterms = d_idx.shape[0]
    for n in range(order + 1):
        acc = num[n]
        for t in range(1, nterms):
            s = d_idx[t]
            if s > n:
                break
            acc = (acc - d_val[t] * out[n - s]) % m
        out[n] = (acc * inv0) % m
    return out
