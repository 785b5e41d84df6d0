"""GF(2) rank of many 32x32 binary matrices, vectorized across matrices.

Each matrix is held as 32 rows of packed uint32; forward elimination
proceeds column by column with numpy masking so all matrices advance in
lockstep regardless of their individual pivot patterns.
"""

from __future__ import annotations

import numpy as np


def pack_matrices(bits):
    """(n_matrices * 1024) bits, row-major per matrix -> (n_matrices, 32) uint32.

    Bit 0 of a row is the leftmost (most significant) column.
    """
    n_m = bits.size // 1024
    rows = bits[: n_m * 1024].reshape(n_m * 32, 32)
    packed = np.packbits(rows, axis=1)
    return (
        (packed[:, 0].astype(np.uint32) << 24)
        | (packed[:, 1].astype(np.uint32) << 16)
        | (packed[:, 2].astype(np.uint32) << 8)
        | packed[:, 3].astype(np.uint32)
    ).reshape(n_m, 32)


def rank32_many(matrices):
    """Ranks of (n, 32) packed matrices; returns int array of length n."""
    rows = matrices.copy()
    n = rows.shape[0]
    rank = np.zeros(n, dtype=np.int64)
    row_idx = np.arange(32)[None, :]
    ar = np.arange(n)
    for col in range(32):
        bit = np.uint32(1) << np.uint32(31 - col)
        has = (rows & bit) != 0
        cand = has & (row_idx >= rank[:, None])
        any_cand = cand.any(axis=1)
        pivot = np.argmax(cand, axis=1)
        mi = ar[any_cand]
        pr = pivot[any_cand]
        rr = rank[any_cand]
        # swap pivot row up to the rank frontier
        tmp = rows[mi, pr].copy()
        rows[mi, pr] = rows[mi, rr]
        rows[mi, rr] = tmp
        # eliminate the column from every row below the frontier
        has = (rows & bit) != 0
        elim = has & (row_idx > rank[:, None]) & any_cand[:, None]
        pivot_rows = np.zeros(n, dtype=np.uint32)
        pivot_rows[mi] = rows[mi, rr]
        rows ^= elim * pivot_rows[:, None]
        rank[any_cand] += 1
    return rank
