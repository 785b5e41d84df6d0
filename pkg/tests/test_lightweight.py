"""General-purpose generator conformance against independent oracles."""

import numpy as np
import pytest

from iotrng import gp_seed
from iotrng.errors import UnknownAlgorithmError
from iotrng.lightweight import (
    GP_CLASSES,
    ZERO_SEED_SUBSTITUTE,
    KnuthLcg,
    Lfsr16,
    MinStd,
    Mt19937,
    TinyMt32,
    Xoroshiro128Plus,
    Xorshift32,
    Xorshift64Star,
    knuth_lcg_step,
    lfsr16_next_u32,
    minstd_next_u32,
    minstd_step,
    mt19937_init,
    xoroshiro128plus_step,
    xorshift32_step,
    xorshift64star_step,
)

from oracle_gens import (
    OracleMt19937,
    OracleTinyMt32,
    oracle_knuth_sequence,
    oracle_lfsr16_bits,
    oracle_minstd_states,
    oracle_xoroshiro128plus_native,
    oracle_xorshift32_sequence,
    oracle_xorshift64star_native,
)

ALL_NAMES = [cls.name for cls in GP_CLASSES]


# ---------------------------------------------------------------------------
# knuth lcg
# ---------------------------------------------------------------------------


def test_knuth_step_zero_state():
    state, word = knuth_lcg_step(0)
    assert state == 1
    assert word == 0


def test_knuth_step_state_one():
    # frozen from the big-integer oracle
    state, word = knuth_lcg_step(1)
    assert state == 6364136223846793006
    assert word == 1481765933


def test_knuth_matches_oracle():
    gen = KnuthLcg(42)
    assert [gen.next_u32() for _ in range(4)] == [
        2104627054, 2013331137, 2406144595, 107061148,
    ]
    assert oracle_knuth_sequence(42, 4) == [
        2104627054, 2013331137, 2406144595, 107061148,
    ]


def test_knuth_no_state_repetition_small_scale():
    # 2^20 steps from seed 42 never revisit a 64-bit state
    gen = KnuthLcg(42)
    n = 1 << 20
    gen.words(n)
    states = set()
    g2 = KnuthLcg(42)
    step = 1 << 14
    for _ in range(n // step):
        g2.words(step)
        s = g2._state
        assert s not in states
        states.add(s)


# ---------------------------------------------------------------------------
# xorshift family
# ---------------------------------------------------------------------------


def test_xorshift32_reference_value():
    state, word = xorshift32_step(1)
    assert word == 270369 == 0x42021
    assert state == word


def test_xorshift32_rejects_zero_state():
    with pytest.raises(ValueError):
        xorshift32_step(0)


def test_xorshift32_zero_seed_substitution():
    gen = Xorshift32(0)
    assert gen._state == ZERO_SEED_SUBSTITUTE & 0xFFFFFFFF == 0x7F4A7C15


def test_xorshift32_never_hits_zero():
    state = 1
    for _ in range(1 << 20):
        state, _ = xorshift32_step(state)
        assert state != 0
    assert oracle_xorshift32_sequence(1, 5) == [
        270369, 67634689, 2647435461, 307599695, 2398689233,
    ]


def test_xorshift64star_reference_vector():
    gen = Xorshift64Star(1)
    native = oracle_xorshift64star_native(1, 3)
    assert native[0] == 0x47E4CE4B896CDD1D
    words = list(gen.words(6))
    expect = []
    for v in native:
        expect += [v & 0xFFFFFFFF, v >> 32]
    assert words == expect


def test_xorshift64star_zero_rejected():
    with pytest.raises(ValueError):
        xorshift64star_step(0)


def test_buffered_two_reads_one_step():
    for cls in (Xorshift64Star, Xoroshiro128Plus):
        gen = cls(123)
        assert gen.native_steps == 0
        gen.next_u32()
        assert gen.native_steps == 1
        gen.next_u32()
        assert gen.native_steps == 1
        gen.words(2 * 577)
        assert gen.native_steps == 1 + 577


def test_xoroshiro_first_output_is_state_sum():
    gen = Xoroshiro128Plus(0)
    gen.set_state(1, 0)
    assert gen.next_u32() == 1
    assert gen.next_u32() == 0


def test_xoroshiro_zero_state_rejected():
    with pytest.raises(ValueError):
        xoroshiro128plus_step((0, 0))
    with pytest.raises(ValueError):
        Xoroshiro128Plus(5).set_state(0, 0)


def test_xoroshiro_reference_vector():
    native = oracle_xoroshiro128plus_native(0x0123, 0x4567, 5)
    assert native[0] == 0x468A
    assert native[1] == 0x9184444011114444
    gen = Xoroshiro128Plus(0)
    gen.set_state(0x0123, 0x4567)
    words = list(gen.words(10))
    expect = []
    for v in native:
        expect += [v & 0xFFFFFFFF, v >> 32]
    assert words == expect


# ---------------------------------------------------------------------------
# minstd
# ---------------------------------------------------------------------------


def test_minstd_first_step():
    state, out = minstd_step(1)
    assert state == out == 16807


def test_minstd_word_combination():
    # x1 = 16807, x2 = 16807^2 mod (2^31-1) = 282475249
    state, word = minstd_next_u32(1)
    assert state == 282475249
    assert word == ((16807 & 0xFFFF) << 16) | (282475249 & 0xFFFF) == 1101478641
    assert oracle_minstd_states(1, 2) == [16807, 282475249]


def test_minstd_invalid_states():
    for bad in (0, 2**31 - 1):
        with pytest.raises(ValueError):
            minstd_step(bad)


def test_minstd_seed_reduction():
    assert MinStd(2**31 - 1)._state == 1  # 0 maps to 1
    assert MinStd(2**31)._state == 1      # mod reduction then the 0 rule
    assert MinStd(1)._state == 1


def test_minstd_state_period_divides_modulus_minus_one():
    # the Lehmer orbit of a=16807 has order dividing 2^31-2
    order = 2**31 - 2
    assert pow(16807, order, 2**31 - 1) == 1


# ---------------------------------------------------------------------------
# mersenne twisters
# ---------------------------------------------------------------------------


def test_mt19937_reference_init_table():
    oracle = OracleMt19937(5489)
    assert mt19937_init(5489) == oracle.mt


def test_mt19937_reference_outputs():
    gen = Mt19937(5489)
    expect = [3499211612, 581869302, 3890346734, 3586334585, 545404204]
    assert [gen.next_u32() for _ in range(5)] == expect
    oracle = OracleMt19937(5489)
    assert [oracle.genrand_int32() for _ in range(5)] == expect


def test_mt19937_one_refill_in_first_625_reads():
    gen = Mt19937(5489)
    for _ in range(625):
        gen.next_u32()
    assert gen._refills == 1
    # and via the batch path
    gen = Mt19937(5489)
    gen.words(625)
    assert gen._refills == 1


def test_tinymt32_reference_vector():
    gen = TinyMt32(1)
    expect = [2545341989, 981918433, 3715302833, 2387538352, 3591001365]
    assert [gen.next_u32() for _ in range(5)] == expect
    oracle = OracleTinyMt32(1)
    assert [oracle.generate_uint32() for _ in range(5)] == expect


# ---------------------------------------------------------------------------
# lfsr16
# ---------------------------------------------------------------------------


def test_lfsr16_first_word_frozen():
    state, word = lfsr16_next_u32(1)
    assert word == 0x8000888D
    bits = oracle_lfsr16_bits(1, 32)
    acc = 0
    for b in bits:
        acc = (acc << 1) | b
    assert acc == word


def test_lfsr16_zero_rejected():
    with pytest.raises(ValueError):
        lfsr16_next_u32(0)


def test_lfsr16_maximal_period():
    state = 1
    for i in range(1, 65536):
        state, _ = lfsr16_step_bit_state(state)
        if state == 1:
            assert i == 65535
            return
    pytest.fail("period exceeds 2^16-1")


def lfsr16_step_bit_state(state):
    from iotrng.lightweight import lfsr16_step_bit

    return lfsr16_step_bit(state)


# ---------------------------------------------------------------------------
# cross-cutting
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", ALL_NAMES)
def test_determinism_and_batch_equality(name):
    g1 = gp_seed(name, 0xDEADBEEF)
    g2 = gp_seed(name, 0xDEADBEEF)
    a = [g1.next_u32() for _ in range(700)]
    b = list(g2.words(700))
    assert a == b
    g3 = gp_seed(name, 0xDEADBEEF)
    mixed = list(g3.words(3)) + [g3.next_u32()] + list(g3.words(696))
    assert mixed == a


@pytest.mark.parametrize("name", ALL_NAMES)
def test_seed_zero_is_total(name):
    gen = gp_seed(name, 0)
    assert len(gen.words(16)) == 16


@pytest.mark.parametrize("name", ALL_NAMES)
def test_generate_bytes_little_endian_words(name):
    g1 = gp_seed(name, 99)
    g2 = gp_seed(name, 99)
    data = g1.generate(18)
    words = g2.words(5)
    assert data == words.astype("<u4").tobytes()[:18]


def test_unknown_variant_rejected():
    with pytest.raises(UnknownAlgorithmError):
        gp_seed("md5prng", 1)


def test_distinct_seeds_distinct_streams():
    for name in ALL_NAMES:
        a = gp_seed(name, 1).generate(64)
        b = gp_seed(name, 2).generate(64)
        assert a != b, name
