"""Berlekamp-Massey shortest-LFSR length over GF(2).

Two equivalent implementations: a compiled array version (the hot path;
the linear complexity test runs this on thousands of blocks per
sequence) and a pure-Python variant that tracks the connection
polynomials as integers, used as fallback and cross-check.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def lfsr_length_int(bits):
    """Integer-trick Berlekamp-Massey: s*B and s*C updated incrementally."""
    s = 0
    for i, b in enumerate(bits):
        if b:
            s |= 1 << i
    sb = sc = s
    deg_c = 0
    m = 0
    for n in range(len(bits)):
        disc = sc & (1 << m)
        m += 1
        if disc:
            sc >>= m
            m = 0
            if 2 * deg_c <= n:
                sb, sc = sc, sb
                deg_c = n + 1 - deg_c
            sc ^= sb
    return deg_c


if HAVE_NUMBA:

    @njit(cache=True)
    def _lfsr_length_arr(bits):
        n = bits.shape[0]
        b = np.zeros(n + 1, dtype=np.uint8)
        c = np.zeros(n + 1, dtype=np.uint8)
        t = np.zeros(n + 1, dtype=np.uint8)
        b[0] = 1
        c[0] = 1
        L = 0
        m = -1
        for i in range(n):
            d = bits[i]
            for j in range(1, L + 1):
                d ^= c[j] & bits[i - j]
            if d == 1:
                for j in range(n + 1):
                    t[j] = c[j]
                shift = i - m
                for j in range(n + 1 - shift):
                    c[j + shift] ^= b[j]
                if L <= i // 2:
                    L = i + 1 - L
                    m = i
                    for j in range(n + 1):
                        b[j] = t[j]
        return L

    @njit(cache=True)
    def lfsr_lengths_blocks(bits, block_len):
        n_blocks = bits.shape[0] // block_len
        out = np.empty(n_blocks, dtype=np.int64)
        for k in range(n_blocks):
            out[k] = _lfsr_length_arr(bits[k * block_len : (k + 1) * block_len])
        return out

else:  # pragma: no cover - stripped hosts

    def lfsr_lengths_blocks(bits, block_len):
        n_blocks = bits.shape[0] // block_len
        return np.array(
            [
                lfsr_length_int(bits[k * block_len : (k + 1) * block_len].tolist())
                for k in range(n_blocks)
            ],
            dtype=np.int64,
        )
