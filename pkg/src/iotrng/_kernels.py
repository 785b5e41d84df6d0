"""Compiled batch kernels for the general-purpose generators.

The kernels mirror the step functions in ``lightweight`` exactly; they
exist so bulk word production runs at machine speed (the statistical
battery consumes hundreds of megabits).  When numba is not importable
the package falls back to the pure-Python steps transparently.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on stripped hosts
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


_U1 = np.uint64(1)
_M32 = np.uint64(0xFFFFFFFF)
_M64 = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True)
def fill_knuth(out, state):
    x = np.uint64(state)
    a = np.uint64(6364136223846793005)
    for i in range(out.shape[0]):
        x = x * a + np.uint64(1)
        out[i] = np.uint32(x >> np.uint64(32))
    return x


@njit(cache=True)
def fill_xorshift32(out, state):
    x = np.uint64(state)
    m = np.uint64(0xFFFFFFFF)
    for i in range(out.shape[0]):
        x ^= (x << np.uint64(13)) & m
        x ^= x >> np.uint64(17)
        x ^= (x << np.uint64(5)) & m
        out[i] = np.uint32(x)
    return x


@njit(cache=True)
def fill_xorshift64star(out, state):
    """Fills pairs of words (low first); out length must be even."""
    x = np.uint64(state)
    mul = np.uint64(0x2545F4914F6CDD1D)
    for i in range(out.shape[0] // 2):
        x ^= x >> np.uint64(12)
        x ^= x << np.uint64(25)
        x ^= x >> np.uint64(27)
        native = x * mul
        out[2 * i] = np.uint32(native & np.uint64(0xFFFFFFFF))
        out[2 * i + 1] = np.uint32(native >> np.uint64(32))
    return x


@njit(cache=True)
def fill_xoroshiro128plus(out, s0, s1):
    """Fills pairs of words (low first); out length must be even."""
    a = np.uint64(s0)
    b = np.uint64(s1)
    for i in range(out.shape[0] // 2):
        native = a + b
        b ^= a
        a = ((a << np.uint64(55)) | (a >> np.uint64(9))) ^ b ^ (b << np.uint64(14))
        b = (b << np.uint64(36)) | (b >> np.uint64(28))
        out[2 * i] = np.uint32(native & np.uint64(0xFFFFFFFF))
        out[2 * i + 1] = np.uint32(native >> np.uint64(32))
    return a, b


@njit(cache=True)
def fill_minstd(out, state):
    x = np.uint64(state)
    a = np.uint64(16807)
    m = np.uint64(2147483647)
    for i in range(out.shape[0]):
        x = (x * a) % m
        x1 = x
        x = (x * a) % m
        out[i] = np.uint32(((x1 & np.uint64(0xFFFF)) << np.uint64(16)) | (x & np.uint64(0xFFFF)))
    return x


@njit(cache=True)
def mt19937_refill(mt):
    for i in range(624):
        y = (mt[i] & np.uint32(0x80000000)) | (mt[(i + 1) % 624] & np.uint32(0x7FFFFFFF))
        v = mt[(i + 397) % 624] ^ (y >> np.uint32(1))
        if y & np.uint32(1):
            v ^= np.uint32(0x9908B0DF)
        mt[i] = v


@njit(cache=True)
def fill_mt19937(out, mt, index):
    idx = index
    for i in range(out.shape[0]):
        if idx >= 624:
            mt19937_refill(mt)
            idx = 0
        y = mt[idx]
        idx += 1
        y ^= y >> np.uint32(11)
        y ^= (y << np.uint32(7)) & np.uint32(0x9D2C5680)
        y ^= (y << np.uint32(15)) & np.uint32(0xEFC60000)
        y ^= y >> np.uint32(18)
        out[i] = y
    return idx


@njit(cache=True)
def fill_tinymt32(out, s0, s1, s2, s3):
    # numba promotes 32-bit scalar ops, so state lives in masked uint64s
    m = np.uint64(0xFFFFFFFF)
    a = np.uint64(s0)
    b = np.uint64(s1)
    c = np.uint64(s2)
    d = np.uint64(s3)
    mat1 = np.uint64(0x8F7011EE)
    mat2 = np.uint64(0xFC78FF1F)
    tmat = np.uint64(0x3793FDFF)
    for i in range(out.shape[0]):
        y = d
        x = (a & np.uint64(0x7FFFFFFF)) ^ b ^ c
        x ^= (x << np.uint64(1)) & m
        y ^= (y >> np.uint64(1)) ^ x
        a = b
        b = c
        c = (x ^ (y << np.uint64(10))) & m
        d = y
        if y & np.uint64(1):
            b ^= mat1
            c ^= mat2
        t0 = d
        t1 = (a + (c >> np.uint64(8))) & m
        t0 ^= t1
        if t1 & np.uint64(1):
            t0 ^= tmat
        out[i] = np.uint32(t0)
    return np.uint32(a), np.uint32(b), np.uint32(c), np.uint32(d)


@njit(cache=True)
def fill_lfsr16(out, state):
    s = np.uint32(state)
    for i in range(out.shape[0]):
        w = np.uint32(0)
        for _ in range(32):
            bit = s & np.uint32(1)
            fb = (s ^ (s >> np.uint32(1)) ^ (s >> np.uint32(3)) ^ (s >> np.uint32(12))) & np.uint32(1)
            s = (s >> np.uint32(1)) | (fb << np.uint32(15))
            w = (w << np.uint32(1)) | bit
        out[i] = w
    return s
