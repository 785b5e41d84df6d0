"""Statistical battery: worked examples, special functions, second order.

Frozen expected values for the short sequences come from the standard's
own worked examples; the special-function references were computed with
50-digit arithmetic (mpmath).
"""

import math

import numpy as np
import pytest

from iotrng.errors import PretestFailedError
from iotrng.sts import TestConfig, ks_test_normal, ks_test_uniform, run_suite
from iotrng.sts.bits import BitSequence, bits_from_ascii, bits_from_bytes, bits_to_ascii
from iotrng.sts.special import erfc, igamc
from iotrng.sts.suite import proportion_threshold, second_order_analysis
from iotrng.sts import tests as t

# 50-digit reference values (mpmath)
ERFC_REFERENCE = [
    (0.0, 1.0),
    (0.1, 0.887537083981715),
    (0.25, 0.7236736098317631),
    (0.5, 0.4795001221869535),
    (0.7071067811865476, 0.3173105078629141),
    (1.0, 0.15729920705028513),
    (1.5, 0.033894853524689274),
    (2.0, 0.004677734981047266),
    (3.0, 2.209049699858544e-05),
    (5.0, 1.537459794428035e-12),
]
IGAMC_REFERENCE = [
    (0.5, 0.25, 0.4795001221869535),
    (1.0, 1.0, 0.36787944117144233),
    (1.5, 0.5, 0.8012519569012008),
    (2.5, 3.0, 0.3062189184132784),
    (3.0, 0.05, 0.9999799325063756),
    (4.0, 8.0, 0.042380111991684),
    (4.5, 4.5, 0.43727418891386705),
    (9.0, 12.0, 0.1550277817674629),
    (16384.0, 16300.0, 0.74369194765043),
    (8192.0, 8400.0, 0.01122681674607279),
]


def test_special_functions_vs_high_precision():
    for x, want in ERFC_REFERENCE:
        assert erfc(x) == pytest.approx(want, abs=1e-12)
    for a, x, want in IGAMC_REFERENCE:
        assert igamc(a, x) == pytest.approx(want, abs=1e-12)


# ---------------------------------------------------------------------------
# worked examples from the standard (short sequences, exact formulas)
# ---------------------------------------------------------------------------


def _stat(func, bit_string, *args, **kwargs):
    bits = bits_from_ascii(bit_string)
    return func(bits, *args, **kwargs)


def test_frequency_worked_example():
    # the formula on the 10-bit example; the public API enforces n >= 100
    bits = bits_from_ascii("1011010101")
    s = 2.0 * bits.sum() - bits.size
    assert erfc(abs(s) / math.sqrt(bits.size) / math.sqrt(2)) == pytest.approx(
        0.527089, abs=1e-6
    )
    with pytest.raises(ValueError):
        t.frequency_test(bits)


def test_frequency_extremes():
    ones = np.ones(1000, dtype=np.uint8)
    assert t.frequency_test(ones) < 1e-9
    alternating = np.tile([1, 0], 500).astype(np.uint8)
    assert t.frequency_test(alternating) == pytest.approx(1.0, abs=1e-12)


def test_block_frequency_worked_example():
    assert _stat(t.block_frequency_test, "0110011010", m=3) == pytest.approx(
        0.801252, abs=1e-6
    )


def test_block_frequency_extremes():
    bits = np.tile([1, 0], 256).astype(np.uint8)  # every block exactly half ones
    assert t.block_frequency_test(bits, 128) == pytest.approx(1.0, abs=1e-12)
    assert t.block_frequency_test(np.zeros(1024, dtype=np.uint8), 128) < 1e-12


def test_runs_worked_example():
    bits = bits_from_ascii("1001101011")
    pi = bits.mean()
    v = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    p = erfc(abs(v - 2 * 10 * pi * (1 - pi)) / (2 * pi * (1 - pi) * math.sqrt(20)))
    assert p == pytest.approx(0.147232, abs=1e-6)


def test_runs_pretest_failure():
    with pytest.raises(PretestFailedError):
        t.runs_test(np.ones(1000, dtype=np.uint8))


def test_runs_alternating_deterministic():
    bits = np.tile([1, 0], 500).astype(np.uint8)
    # V_n = n, pi = 1/2: erfc(|n - n/2| / (sqrt(2n)/2)) evaluated in closed form
    expect = erfc((1000 / 2.0) / (0.5 * math.sqrt(2000.0)))
    assert t.runs_test(bits) == pytest.approx(expect, rel=1e-12)


def test_serial_worked_example():
    # 10-bit illustration from the standard; the public API enforces the
    # length recommendation, so evaluate the raw statistic here
    bits = bits_from_ascii("0011011101")
    n = bits.size

    def psi2(m):
        if m == 0:
            return 0.0
        vals = t._rolling_values(bits, m, cyclic=True)
        c = np.bincount(vals, minlength=1 << m).astype(float)
        return float((c * c).sum()) * (1 << m) / n - n

    pm, pm1, pm2 = psi2(3), psi2(2), psi2(1)
    assert igamc(2.0, (pm - pm1) / 2.0) == pytest.approx(0.808792, abs=1e-6)
    assert igamc(1.0, (pm - 2 * pm1 + pm2) / 2.0) == pytest.approx(0.670320, abs=1e-6)
    with pytest.raises(ValueError):
        t.serial_test(bits, m=3)


def test_apen_worked_example():
    bits = bits_from_ascii("0100110101")
    n = bits.size

    def phi(m):
        vals = t._rolling_values(bits, m, cyclic=True)
        c = np.bincount(vals, minlength=1 << m)
        c = c[c > 0].astype(float) / n
        return float((c * np.log(c)).sum())

    chi2 = 2.0 * n * (math.log(2) - (phi(3) - phi(4)))
    assert igamc(4.0, chi2 / 2.0) == pytest.approx(0.261961, abs=1e-6)
    with pytest.raises(ValueError):
        t.approximate_entropy_test(bits, m=3)


def test_cusum_worked_example():
    bits = bits_from_ascii("1011010111")
    s = np.cumsum(bits.astype(int) * 2 - 1)
    p = t._cusum_p(bits.size, int(np.abs(s).max()))
    assert p == pytest.approx(0.4116588, abs=1e-6)


def test_rank_identity_tiled_deterministic():
    # every matrix is the identity: full rank with certainty
    eye = np.eye(32, dtype=np.uint8).reshape(-1)
    bits = np.tile(eye, 40)
    p = t.rank_test(bits)
    n = 40
    p32 = t._rank_class_probability(32)
    p31 = t._rank_class_probability(31)
    p30 = 1 - p32 - p31
    chi2 = (
        (n - n * p32) ** 2 / (n * p32)
        + (0 - n * p31) ** 2 / (n * p31)
        + (0 - n * p30) ** 2 / (n * p30)
    )
    assert p == pytest.approx(math.exp(-chi2 / 2), rel=1e-12)


def test_rank_probabilities_sum():
    p32 = t._rank_class_probability(32)
    p31 = t._rank_class_probability(31)
    assert p32 == pytest.approx(0.2888, abs=2e-4)
    assert p31 == pytest.approx(0.5776, abs=2e-4)
    assert 0 < 1 - p32 - p31 < 0.14


def test_monotone_failures_on_constant_input():
    bits = np.ones(1_000_000, dtype=np.uint8)
    config = TestConfig()
    assert t.frequency_test(bits) < 1e-12
    assert t.block_frequency_test(bits) < 1e-12
    assert t.runs_statistics(bits, config)[0][1] == 0.0
    assert t.approximate_entropy_test(bits) < 1e-12


def test_excursions_not_applicable_needs_cycles():
    # strongly biased walk: almost no zero crossings
    rng = np.random.default_rng(3)
    bits = (rng.random(1_000_000) < 0.6).astype(np.uint8)
    stats = t.random_excursions_statistics(bits, TestConfig())
    assert all(math.isnan(p) for _, p in stats)
    stats = t.random_excursions_variant_statistics(bits, TestConfig())
    assert all(math.isnan(p) for _, p in stats)


def test_statistic_count_is_188():
    rng = np.random.default_rng(11)
    bits = rng.integers(0, 2, size=1_000_000).astype(np.uint8)
    from iotrng.sts.suite import evaluate_sequence

    stats = evaluate_sequence(bits, TestConfig())
    assert len(stats) == 188


# ---------------------------------------------------------------------------
# second-order analysis
# ---------------------------------------------------------------------------


def _config(**kwargs):
    return TestConfig(**kwargs)


def test_proportion_threshold_reference_points():
    assert proportion_threshold(100, 0.01) == 96
    assert proportion_threshold(56, 0.01) == 53
    assert proportion_threshold(71, 0.01) == 67


def test_second_order_uniform_bins_pass():
    p_values = np.concatenate([np.full(10, 0.05 + 0.1 * i) for i in range(10)])
    passed, applicable, threshold, prop_ok, p2, p2_ok = second_order_analysis(
        p_values, _config()
    )
    assert applicable == 100 and passed == 100
    assert prop_ok and p2_ok
    assert p2 == pytest.approx(1.0, abs=1e-12)


def test_second_order_single_bin_fails():
    p_values = np.full(100, 0.55)
    *_, p2, p2_ok = second_order_analysis(p_values, _config())
    assert p2 < 1e-4 and not p2_ok


def test_second_order_proportion_boundary():
    good = np.linspace(0.02, 0.97, 96)
    bad = np.full(4, 0.001)
    passed, _, threshold, prop_ok, *_ = second_order_analysis(
        np.concatenate([good, bad]), _config()
    )
    assert passed == 96 and threshold == 96 and prop_ok
    passed, _, _, prop_ok, *_ = second_order_analysis(
        np.concatenate([good[:-1], np.full(5, 0.001)]), _config()
    )
    assert passed == 95 and not prop_ok


def test_second_order_nan_reduces_sample():
    p_values = np.concatenate([np.linspace(0.02, 0.98, 56), np.full(44, np.nan)])
    passed, applicable, threshold, *_ = second_order_analysis(p_values, _config())
    assert applicable == 56 and threshold == 53


def test_second_order_deterministic():
    rng = np.random.default_rng(5)
    p_values = rng.random(100)
    a = second_order_analysis(p_values, _config())
    b = second_order_analysis(p_values.copy(), _config())
    assert a == b


# ---------------------------------------------------------------------------
# KS tests
# ---------------------------------------------------------------------------


def test_ks_normal_on_quantile_grid():
    from scipy.stats import norm

    grid = norm.ppf((np.arange(1, 101) - 0.5) / 100)
    assert ks_test_normal(grid) > 0.99


def test_ks_normal_rejects_bimodal():
    samples = np.concatenate([np.full(50, -1.0), np.full(50, 1.0)])
    samples += np.linspace(0, 1e-6, 100)  # break exact ties
    assert ks_test_normal(samples) < 0.01


def test_ks_normal_guards():
    with pytest.raises(ValueError):
        ks_test_normal([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        ks_test_normal(np.full(20, 3.14))


def test_ks_uniform_detects_skew():
    rng = np.random.default_rng(9)
    assert ks_test_uniform(rng.random(2000)) > 1e-4
    assert ks_test_uniform(rng.random(2000) ** 3) < 1e-6


# ---------------------------------------------------------------------------
# bit plumbing
# ---------------------------------------------------------------------------


def test_bit_expansion_is_msb_first_per_byte():
    bits = bits_from_bytes(b"\x80\x01")
    assert bits.tolist() == [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]


def test_ascii_roundtrip():
    bits = bits_from_bytes(b"\xa5\x3c")
    assert bits_from_ascii(bits_to_ascii(bits)).tolist() == bits.tolist()


def test_bits_from_ascii_ignores_whitespace():
    assert bits_from_ascii("1 0\n1\t1").tolist() == [1, 0, 1, 1]


def test_bitsequence_validation():
    with pytest.raises(ValueError):
        BitSequence(np.array([0, 2], dtype=np.uint8))
    with pytest.raises(ValueError):
        BitSequence(np.array([], dtype=np.uint8))
    assert len(BitSequence.from_bytes(b"\xff", n_bits=5)) == 5


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------


def _small_config(**kw):
    return TestConfig(sequence_bits=20000, sequences=8, **kw)


def _small_suite_stats(config):
    # only tests valid at 20 kbit
    return ("frequency", "block_frequency", "cumulative_sums", "runs", "dft")


def test_run_suite_json_deterministic():
    from iotrng import make_generator

    config = _small_config()
    only = _small_suite_stats(config)
    gen1 = make_generator("mt19937", seed=9)
    gen2 = make_generator("mt19937", seed=9)
    rep1 = run_suite(lambda n: gen1.generate(n), config, "mt19937", only_tests=only)
    rep2 = run_suite(lambda n: gen2.generate(n), config, "mt19937", only_tests=only)
    assert rep1.to_json() == rep2.to_json()


def test_run_suite_parallel_matches_serial():
    from iotrng import make_generator

    config = _small_config()
    only = _small_suite_stats(config)
    data = make_generator("tinymt32", seed=4).generate(
        config.sequence_bytes * config.sequences
    )
    serial = run_suite(data, config, "tinymt32", only_tests=only)
    par_cfg = _small_config(workers=2)
    parallel = run_suite(data, par_cfg, "tinymt32", only_tests=only)
    assert serial.to_json() == parallel.to_json()


def test_run_suite_source_exhausted():
    config = _small_config()
    with pytest.raises(ValueError):
        run_suite(b"\x00" * 100, config)


def test_p_values_in_unit_interval():
    rng = np.random.default_rng(21)
    from iotrng.sts.suite import evaluate_sequence

    for _ in range(3):
        bits = rng.integers(0, 2, size=1_000_000).astype(np.uint8)
        for name, p in evaluate_sequence(bits, TestConfig()).items():
            if not math.isnan(p):
                assert 0.0 <= p <= 1.0, name
