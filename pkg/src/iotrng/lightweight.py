"""General-purpose generators with fixed-size integer states.

Every algorithm is expressed twice: as a pure step function operating on
plain integers (the canonical semantics, used by tests and by the
per-call API) and as a compiled batch kernel in ``_kernels`` (used for
bulk word production).  Both paths must produce bit-identical streams.

The 16-bit LFSR is intentionally weak.  It stands in for shift-register
hardware generators and serves as a negative control for the statistical
battery; it must never be selected for anything but experiments.
"""

from __future__ import annotations

import numpy as np

from .errors import UnknownAlgorithmError

MASK16 = 0xFFFF
MASK32 = 0xFFFFFFFF
MASK64 = 0xFFFFFFFFFFFFFFFF

# Substituted for an all-zero derived state (any fixed nonzero value works;
# this one is kept stable so streams stay reproducible across releases).
ZERO_SEED_SUBSTITUTE = 0x9E3779B97F4A7C15

KNUTH_MULTIPLIER = 6364136223846793005
KNUTH_INCREMENT = 1

MINSTD_MULTIPLIER = 16807
MINSTD_MODULUS = 2**31 - 1

# Fibonacci LFSR over x^16 + x^15 + x^13 + x^4 + 1 (maximal length).
LFSR16_SHIFTS = (0, 1, 3, 12)

TINYMT32_MAT1 = 0x8F7011EE
TINYMT32_MAT2 = 0xFC78FF1F
TINYMT32_TMAT = 0x3793FDFF


# ---------------------------------------------------------------------------
# step functions
# ---------------------------------------------------------------------------


def knuth_lcg_step(state):
    """One 64-bit LCG step; returns (state', high 32 bits of state')."""
    state = (KNUTH_MULTIPLIER * state + KNUTH_INCREMENT) & MASK64
    return state, state >> 32


def xorshift32_step(state):
    if state == 0:
        raise ValueError("xorshift32 state must be nonzero")
    x = state
    x ^= (x << 13) & MASK32
    x ^= x >> 17
    x ^= (x << 5) & MASK32
    return x, x


def xorshift64star_step(state):
    """One 64-bit step; returns (state', 64-bit native output)."""
    if state == 0:
        raise ValueError("xorshift64* state must be nonzero")
    x = state
    x ^= x >> 12
    x ^= (x << 25) & MASK64
    x ^= x >> 27
    return x, (x * 0x2545F4914F6CDD1D) & MASK64


def _rotl64(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


def xoroshiro128plus_step(state):
    """One step of the 128-bit generator; returns ((s0', s1'), 64-bit output).

    Output is the sum of the two state words taken before the update; the
    update uses the original rotation constants (55, 14, 36).
    """
    s0, s1 = state
    if s0 == 0 and s1 == 0:
        raise ValueError("xoroshiro128+ state must be nonzero")
    result = (s0 + s1) & MASK64
    s1 ^= s0
    s0 = _rotl64(s0, 55) ^ s1 ^ ((s1 << 14) & MASK64)
    s1 = _rotl64(s1, 36)
    return (s0, s1), result


def minstd_step(state):
    """One Lehmer step x <- 16807*x mod (2^31 - 1)."""
    if not 1 <= state <= MINSTD_MODULUS - 1:
        raise ValueError("minstd state must be in [1, 2^31-2]")
    state = (MINSTD_MULTIPLIER * state) % MINSTD_MODULUS
    return state, state


def minstd_next_u32(state):
    """Two Lehmer steps combined into one 32-bit word.

    The base generator yields 31 usable bits per step, so a full 32-bit
    word is assembled from the low 16 bits of two consecutive outputs;
    this halves the usable period.
    """
    state, x1 = minstd_step(state)
    state, x2 = minstd_step(state)
    return state, ((x1 & MASK16) << 16) | (x2 & MASK16)


def lfsr16_step_bit(state):
    """Shift once; returns (state', emitted bit)."""
    if not 1 <= state <= MASK16:
        raise ValueError("lfsr16 state must be in [1, 2^16-1]")
    bit = state & 1
    fb = (
        (state >> LFSR16_SHIFTS[0])
        ^ (state >> LFSR16_SHIFTS[1])
        ^ (state >> LFSR16_SHIFTS[2])
        ^ (state >> LFSR16_SHIFTS[3])
    ) & 1
    state = (state >> 1) | (fb << 15)
    return state, bit


def lfsr16_next_u32(state):
    """32 shifts concatenated MSB-first into one word."""
    word = 0
    for _ in range(32):
        state, bit = lfsr16_step_bit(state)
        word = (word << 1) | bit
    return state, word


def mt19937_init(seed32):
    mt = [seed32 & MASK32] + [0] * 623
    for i in range(1, 624):
        mt[i] = (1812433253 * (mt[i - 1] ^ (mt[i - 1] >> 30)) + i) & MASK32
    return mt


def mt19937_refill(mt):
    for i in range(624):
        y = (mt[i] & 0x80000000) | (mt[(i + 1) % 624] & 0x7FFFFFFF)
        v = mt[(i + 397) % 624] ^ (y >> 1)
        if y & 1:
            v ^= 0x9908B0DF
        mt[i] = v


def mt19937_temper(y):
    y ^= y >> 11
    y ^= (y << 7) & 0x9D2C5680
    y ^= (y << 15) & 0xEFC60000
    y ^= y >> 18
    return y


def tinymt32_init(seed32):
    st = [seed32 & MASK32, TINYMT32_MAT1, TINYMT32_MAT2, TINYMT32_TMAT]
    for i in range(1, 8):
        st[i & 3] ^= (i + 1812433253 * (st[(i - 1) & 3] ^ (st[(i - 1) & 3] >> 30))) & MASK32
        st[i & 3] &= MASK32
    if (st[0] & 0x7FFFFFFF) == 0 and st[1] == 0 and st[2] == 0 and st[3] == 0:
        st[0], st[1], st[2], st[3] = ord("T"), ord("I"), ord("N"), ord("Y")
    for _ in range(8):
        tinymt32_next_state(st)
    return st


def tinymt32_next_state(st):
    y = st[3]
    x = (st[0] & 0x7FFFFFFF) ^ st[1] ^ st[2]
    x ^= (x << 1) & MASK32
    y ^= (y >> 1) ^ x
    st[0] = st[1]
    st[1] = st[2]
    st[2] = (x ^ (y << 10)) & MASK32
    st[3] = y
    if y & 1:
        st[1] ^= TINYMT32_MAT1
        st[2] ^= TINYMT32_MAT2


def tinymt32_temper(st):
    t0 = st[3]
    t1 = (st[0] + (st[2] >> 8)) & MASK32
    t0 ^= t1
    if t1 & 1:
        t0 ^= TINYMT32_TMAT
    return t0


# ---------------------------------------------------------------------------
# generator classes
# ---------------------------------------------------------------------------


class GpGenerator:
    """Base for general-purpose generators.

    Instances are single-owner state machines: ``next_u32`` advances one
    output word at a time, ``words``/``generate`` produce in bulk (through
    the compiled kernels when available) and are bit-identical to repeated
    ``next_u32`` calls.
    """

    name = "?"
    native_output_bits = 32
    state_bytes = 4
    seed_entropy_bits = 32

    def __init__(self, seed):
        self.seed(seed)

    def seed(self, seed):
        raise NotImplementedError

    def next_u32(self):
        raise NotImplementedError

    def words(self, count):
        """Produce ``count`` 32-bit words as a numpy uint32 array."""
        out = np.empty(count, dtype=np.uint32)
        for i in range(count):
            out[i] = self.next_u32()
        return out

    def generate(self, n_bytes):
        """Produce ``n_bytes`` of output; words are serialized little-endian."""
        nwords = -(-n_bytes // 4)
        return self.words(nwords).astype("<u4").tobytes()[:n_bytes]

    @property
    def native_steps(self):
        """Number of native state transitions taken so far."""
        return self._steps


class KnuthLcg(GpGenerator):
    """64-bit LCG with Knuth's multiplier; outputs the high 32 state bits."""

    name = "knuth_lcg"
    state_bytes = 8
    seed_entropy_bits = 64

    def seed(self, seed):
        self._state = seed & MASK64
        self._steps = 0

    def next_u32(self):
        self._state, word = knuth_lcg_step(self._state)
        self._steps += 1
        return word

    def words(self, count):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            out = np.empty(count, dtype=np.uint32)
            self._state = int(_kernels.fill_knuth(out, np.uint64(self._state)))
            self._steps += count
            return out
        return super().words(count)


class Xorshift32(GpGenerator):
    """Marsaglia's 32-bit xorshift with the (13, 17, 5) triple."""

    name = "xorshift32"

    def seed(self, seed):
        state = seed & MASK32
        if state == 0:
            state = ZERO_SEED_SUBSTITUTE & MASK32
        self._state = state
        self._steps = 0

    def next_u32(self):
        self._state, word = xorshift32_step(self._state)
        self._steps += 1
        return word

    def words(self, count):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            out = np.empty(count, dtype=np.uint32)
            self._state = int(_kernels.fill_xorshift32(out, np.uint64(self._state)))
            self._steps += count
            return out
        return super().words(count)


class _Buffered64(GpGenerator):
    """Common buffering for generators with 64-bit native output.

    Each native step yields two 32-bit words, delivered low word first;
    the high word is held until the next read, so 2N word reads consume
    exactly N native steps.
    """

    native_output_bits = 64
    state_bytes = 8
    seed_entropy_bits = 64

    def _native(self):
        raise NotImplementedError

    def next_u32(self):
        if self._pending is not None:
            word, self._pending = self._pending, None
            return word
        native = self._native()
        self._pending = native >> 32
        return native & MASK32

    def words(self, count):
        out = np.empty(count, dtype=np.uint32)
        i = 0
        if self._pending is not None and count > 0:
            out[0] = self._pending
            self._pending = None
            i = 1
        pairs, odd = divmod(count - i, 2)
        if pairs:
            self._fill_pairs(out[i : i + 2 * pairs], pairs)
            i += 2 * pairs
        if odd:
            native = self._native()
            out[i] = native & MASK32
            self._pending = native >> 32
        return out

    def _fill_pairs(self, out, pairs):
        for j in range(pairs):
            native = self._native()
            out[2 * j] = native & MASK32
            out[2 * j + 1] = native >> 32


class Xorshift64Star(_Buffered64):
    """64-bit xorshift with a multiplicative output scrambler."""

    name = "xorshift64star"
    state_bytes = 8 + 4  # state plus buffered half-word

    def seed(self, seed):
        state = seed & MASK64
        if state == 0:
            state = ZERO_SEED_SUBSTITUTE
        self._state = state
        self._pending = None
        self._steps = 0

    def _native(self):
        self._state, native = xorshift64star_step(self._state)
        self._steps += 1
        return native

    def _fill_pairs(self, out, pairs):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            self._state = int(_kernels.fill_xorshift64star(out, np.uint64(self._state)))
            self._steps += pairs
            return
        super()._fill_pairs(out, pairs)


class Xoroshiro128Plus(_Buffered64):
    """128-bit state; output adds the two state words before the update."""

    name = "xoroshiro128plus"
    state_bytes = 16 + 4
    seed_entropy_bits = 64

    def seed(self, seed):
        s0 = seed & MASK64
        if s0 == 0:
            s0 = ZERO_SEED_SUBSTITUTE
        self._state = (s0, 0)
        self._pending = None
        self._steps = 0

    def set_state(self, s0, s1):
        """Install an explicit 128-bit state (two 64-bit words)."""
        if s0 == 0 and s1 == 0:
            raise ValueError("xoroshiro128+ state must be nonzero")
        self._state = (s0 & MASK64, s1 & MASK64)
        self._pending = None

    def _native(self):
        self._state, native = xoroshiro128plus_step(self._state)
        self._steps += 1
        return native

    def _fill_pairs(self, out, pairs):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            s0, s1 = self._state
            s0, s1 = _kernels.fill_xoroshiro128plus(out, np.uint64(s0), np.uint64(s1))
            self._state = (int(s0), int(s1))
            self._steps += pairs
            return
        super()._fill_pairs(out, pairs)


class MinStd(GpGenerator):
    """Park-Miller minimal standard LCG, two steps per 32-bit word."""

    name = "minstd"
    seed_entropy_bits = 31

    def seed(self, seed):
        state = seed % MINSTD_MODULUS
        if state == 0:
            state = 1
        self._state = state
        self._steps = 0

    def next_u32(self):
        self._state, word = minstd_next_u32(self._state)
        self._steps += 2
        return word

    def words(self, count):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            out = np.empty(count, dtype=np.uint32)
            self._state = int(_kernels.fill_minstd(out, np.uint64(self._state)))
            self._steps += 2 * count
            return out
        return super().words(count)


class Mt19937(GpGenerator):
    """Mersenne Twister with the reference initialization and tempering."""

    name = "mt19937"
    state_bytes = 624 * 4 + 4
    seed_entropy_bits = 32

    def seed(self, seed):
        self._mt = np.array(mt19937_init(seed & MASK32), dtype=np.uint32)
        self._index = 624
        self._steps = 0
        self._refills = 0
        # the first buffer generation belongs to seeding, not to the stream
        self._refill()
        self._refills = 0

    def next_u32(self):
        if self._index >= 624:
            self._refill()
        word = mt19937_temper(int(self._mt[self._index]))
        self._index += 1
        self._steps += 1
        return word

    def _refill(self):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            _kernels.mt19937_refill(self._mt)
        else:
            buf = [int(v) for v in self._mt]
            mt19937_refill(buf)
            self._mt[:] = buf
        self._index = 0
        self._refills += 1

    def words(self, count):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            out = np.empty(count, dtype=np.uint32)
            available = 624 - self._index
            if count > available:
                self._refills += 1 + (count - available - 1) // 624
            self._index = int(_kernels.fill_mt19937(out, self._mt, self._index))
            self._steps += count
            return out
        return super().words(count)


class TinyMt32(GpGenerator):
    """Tiny Mersenne Twister (127-bit state) with the standard parameter set."""

    name = "tinymt32"
    state_bytes = 16

    def seed(self, seed):
        self._st = tinymt32_init(seed & MASK32)
        self._steps = 0

    def next_u32(self):
        tinymt32_next_state(self._st)
        self._steps += 1
        return tinymt32_temper(self._st)

    def words(self, count):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            out = np.empty(count, dtype=np.uint32)
            st = self._st
            s0, s1, s2, s3 = _kernels.fill_tinymt32(out, st[0], st[1], st[2], st[3])
            self._st = [int(s0), int(s1), int(s2), int(s3)]
            self._steps += count
            return out
        return super().words(count)


class Lfsr16(GpGenerator):
    """Deliberately weak 16-bit LFSR used as a negative statistical control."""

    name = "lfsr16"
    state_bytes = 2
    seed_entropy_bits = 16

    def seed(self, seed):
        state = seed & MASK16
        if state == 0:
            state = ZERO_SEED_SUBSTITUTE & MASK16
        self._state = state
        self._steps = 0

    def next_u32(self):
        self._state, word = lfsr16_next_u32(self._state)
        self._steps += 32
        return word

    def words(self, count):
        from . import _kernels

        if _kernels.HAVE_NUMBA:
            out = np.empty(count, dtype=np.uint32)
            self._state = int(_kernels.fill_lfsr16(out, np.uint32(self._state)))
            self._steps += 32 * count
            return out
        return super().words(count)


GP_CLASSES = (
    KnuthLcg,
    Xorshift32,
    Xorshift64Star,
    Xoroshiro128Plus,
    MinStd,
    Mt19937,
    TinyMt32,
    Lfsr16,
)

_BY_NAME = {cls.name: cls for cls in GP_CLASSES}


def gp_seed(variant, seed):
    """Build a seeded general-purpose generator by name.

    Total over all 64-bit seeds: zero (or otherwise invalid) seeds map onto
    fixed valid states so that every variant accepts every seed value.
    """
    try:
        cls = _BY_NAME[variant]
    except KeyError:
        raise UnknownAlgorithmError(
            f"unknown general-purpose generator {variant!r}; "
            f"valid names: {sorted(_BY_NAME)}"
        ) from None
    return cls(seed)
