"""The fifteen statistical tests.

Formulas, constants, block layouts, and edge conventions follow the
classic public-domain C battery (sts 2.1.2) so that p-values agree with
it to reference precision; the implementations here are vectorized.

Every ``*_statistics`` function maps a 0/1 uint8 array to a list of
``(statistic_name, p_value)`` pairs; ``nan`` marks a statistic that is
not applicable to the given sequence (random excursions with too few
cycles).  The single-statistic convenience wrappers raise instead.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import PretestFailedError
from .berlekamp import lfsr_lengths_blocks
from .gf2rank import pack_matrices, rank32_many
from .special import erfc, igamc, log_gamma, normal_cdf
from .templates import aperiodic_templates, template_bits_string

LN2 = math.log(2.0)


def _check_length(bits, minimum, test):
    if bits.size < minimum:
        raise ValueError(f"{test} needs at least {minimum} bits, got {bits.size}")


# ---------------------------------------------------------------------------
# 1. frequency (monobit)
# ---------------------------------------------------------------------------


def frequency_test(bits):
    _check_length(bits, 100, "frequency")
    n = bits.size
    s = 2.0 * int(bits.sum()) - n
    return erfc(abs(s) / math.sqrt(n) / math.sqrt(2.0))


def frequency_statistics(bits, config):
    return [("frequency", frequency_test(bits))]


# ---------------------------------------------------------------------------
# 2. block frequency
# ---------------------------------------------------------------------------


def block_frequency_test(bits, m=128):
    _check_length(bits, m, "block_frequency")
    n_blocks = bits.size // m
    pi = bits[: n_blocks * m].reshape(n_blocks, m).mean(axis=1)
    chi2 = 4.0 * m * float(((pi - 0.5) ** 2).sum())
    return igamc(n_blocks / 2.0, chi2 / 2.0)


def block_frequency_statistics(bits, config):
    return [("block_frequency", block_frequency_test(bits, config.block_frequency_m))]


# ---------------------------------------------------------------------------
# 3. cumulative sums (forward / reverse)
# ---------------------------------------------------------------------------


def _cdiv(a, b):
    """C-style integer division (truncation toward zero)."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _cusum_p(n, z):
    sqrt_n = math.sqrt(n)
    sum1 = 0.0
    for k in range(_cdiv(_cdiv(-n, z) + 1, 4), _cdiv(_cdiv(n, z) - 1, 4) + 1):
        sum1 += normal_cdf((4 * k + 1) * z / sqrt_n)
        sum1 -= normal_cdf((4 * k - 1) * z / sqrt_n)
    sum2 = 0.0
    for k in range(_cdiv(_cdiv(-n, z) - 3, 4), _cdiv(_cdiv(n, z) - 1, 4) + 1):
        sum2 += normal_cdf((4 * k + 3) * z / sqrt_n)
        sum2 -= normal_cdf((4 * k + 1) * z / sqrt_n)
    return 1.0 - sum1 + sum2


def cumulative_sums_test(bits):
    _check_length(bits, 100, "cumulative_sums")
    n = bits.size
    steps = bits.astype(np.int64) * 2 - 1
    s = np.cumsum(steps)
    z_fwd = int(np.max(np.abs(s)))
    s_rev = np.cumsum(steps[::-1])
    z_rev = int(np.max(np.abs(s_rev)))
    return _cusum_p(n, z_fwd), _cusum_p(n, z_rev)


def cumulative_sums_statistics(bits, config):
    p_fwd, p_rev = cumulative_sums_test(bits)
    return [("cumulative_sums_forward", p_fwd), ("cumulative_sums_reverse", p_rev)]


# ---------------------------------------------------------------------------
# 4. runs
# ---------------------------------------------------------------------------


def runs_test(bits):
    _check_length(bits, 100, "runs")
    n = bits.size
    pi = float(bits.mean())
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        raise PretestFailedError(
            f"ones fraction {pi:.4f} too far from 1/2 for the runs statistic"
        )
    v = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    num = abs(v - 2.0 * n * pi * (1 - pi))
    den = 2.0 * pi * (1 - pi) * math.sqrt(2.0 * n)
    return erfc(num / den)


def runs_statistics(bits, config):
    try:
        p = runs_test(bits)
    except PretestFailedError:
        p = 0.0  # the battery records a hard failure instead of erroring out
    return [("runs", p)]


# ---------------------------------------------------------------------------
# 5. longest run of ones
# ---------------------------------------------------------------------------

_LONGEST_RUN_TABLES = [
    # (min n, M, V categories, class probabilities)
    (128, 8, (1, 2, 3, 4), (0.21484375, 0.3671875, 0.23046875, 0.1875)),
    (6272, 128, (4, 5, 6, 7, 8, 9),
     (0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847)),
    (750000, 10000, (10, 11, 12, 13, 14, 15, 16),
     (0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727)),
]


def _longest_run_of_ones(block):
    padded = np.r_[np.uint8(0), block, np.uint8(0)].astype(np.int8)
    d = np.diff(padded)
    starts = np.flatnonzero(d == 1)
    if starts.size == 0:
        return 0
    ends = np.flatnonzero(d == -1)
    return int((ends - starts).max())


def longest_run_test(bits):
    _check_length(bits, 128, "longest_run")
    n = bits.size
    table = None
    for min_n, m, cats, pi in _LONGEST_RUN_TABLES:
        if n >= min_n:
            table = (m, cats, pi)
    m, cats, pi = table
    n_blocks = n // m
    blocks = bits[: n_blocks * m].reshape(n_blocks, m)
    nu = np.zeros(len(cats), dtype=np.int64)
    for row in blocks:
        run = _longest_run_of_ones(row)
        idx = np.searchsorted(cats, run)
        nu[min(idx, len(cats) - 1)] += 1
    expected = n_blocks * np.asarray(pi)
    chi2 = float(((nu - expected) ** 2 / expected).sum())
    return igamc((len(cats) - 1) / 2.0, chi2 / 2.0)


def longest_run_statistics(bits, config):
    return [("longest_run", longest_run_test(bits))]


# ---------------------------------------------------------------------------
# 6. binary matrix rank
# ---------------------------------------------------------------------------


def _rank_class_probability(r):
    product = 1.0
    for i in range(r):
        product *= ((1.0 - 2.0 ** (i - 32)) ** 2) / (1.0 - 2.0 ** (i - r))
    return 2.0 ** (r * (32 + 32 - r) - 32 * 32) * product


def rank_test(bits):
    _check_length(bits, 38 * 1024, "rank")
    n_matrices = bits.size // 1024
    ranks = rank32_many(pack_matrices(bits))
    f32 = int(np.count_nonzero(ranks == 32))
    f31 = int(np.count_nonzero(ranks == 31))
    f30 = n_matrices - f32 - f31
    p32 = _rank_class_probability(32)
    p31 = _rank_class_probability(31)
    p30 = 1.0 - p32 - p31
    chi2 = (
        (f32 - n_matrices * p32) ** 2 / (n_matrices * p32)
        + (f31 - n_matrices * p31) ** 2 / (n_matrices * p31)
        + (f30 - n_matrices * p30) ** 2 / (n_matrices * p30)
    )
    return math.exp(-chi2 / 2.0)


def rank_statistics(bits, config):
    return [("rank", rank_test(bits))]


# ---------------------------------------------------------------------------
# 7. discrete fourier transform
# ---------------------------------------------------------------------------


def dft_test(bits):
    _check_length(bits, 1000, "dft")
    n = bits.size
    x = bits.astype(np.float64) * 2.0 - 1.0
    moduli = np.abs(np.fft.rfft(x))[: n // 2]  # spectrum below the Nyquist bin
    t = math.sqrt(math.log(1.0 / 0.05) * n)
    n0 = 0.95 * n / 2.0
    n1 = int(np.count_nonzero(moduli < t))
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4.0)
    return erfc(abs(d) / math.sqrt(2.0))


def dft_statistics(bits, config):
    return [("dft", dft_test(bits))]


# ---------------------------------------------------------------------------
# rolling pattern values (shared by templates / serial / apen)
# ---------------------------------------------------------------------------


def _rolling_values(bits, m, cyclic=False):
    """Value of each m-bit window, first window bit most significant."""
    seq = np.concatenate([bits, bits[: m - 1]]) if cyclic else bits
    vals = np.zeros(seq.size - m + 1, dtype=np.int64)
    for j in range(m):
        vals = (vals << 1) | seq[j : seq.size - m + 1 + j]
    return vals


# ---------------------------------------------------------------------------
# 8. non-overlapping template matching
# ---------------------------------------------------------------------------


def non_overlapping_template_statistics(bits, config):
    m = config.template_length
    n = bits.size
    n_blocks = 8
    block_len = n // n_blocks
    _check_length(bits, n_blocks * m, "non_overlapping_template")
    mean = (block_len - m + 1) / 2.0**m
    var = block_len * (1.0 / 2.0**m - (2.0 * m - 1.0) / 2.0 ** (2 * m))
    vals = _rolling_values(bits, m)
    counts = np.zeros((n_blocks, 1 << m), dtype=np.int64)
    for j in range(n_blocks):
        # windows whose start lies in block j and that fit within it
        seg = vals[j * block_len : j * block_len + block_len - m + 1]
        counts[j] = np.bincount(seg, minlength=1 << m)
    # aperiodic templates cannot overlap themselves, so every match the
    # skip-scan would count is already a distinct window here
    out = []
    for tpl in aperiodic_templates(m):
        w = counts[:, int(tpl)]
        chi2 = float((((w - mean) / math.sqrt(var)) ** 2).sum())
        p = igamc(n_blocks / 2.0, chi2 / 2.0)
        out.append((f"non_overlapping_template_{template_bits_string(tpl, m)}", p))
    return out


# ---------------------------------------------------------------------------
# 9. overlapping template matching (all-ones template)
# ---------------------------------------------------------------------------


def _overlap_pr(u, eta):
    if u == 0:
        return math.exp(-eta)
    total = 0.0
    for el in range(1, u + 1):
        total += math.exp(
            -eta
            - u * LN2
            + el * math.log(eta)
            - log_gamma(el + 1)
            + log_gamma(u)
            - log_gamma(el)
            - log_gamma(u - el + 1)
        )
    return total


def overlapping_template_test(bits, m=9):
    block_len = 1032
    k = 5
    _check_length(bits, block_len, "overlapping_template")
    n_blocks = bits.size // block_len
    lam = (block_len - m + 1) / 2.0**m
    eta = lam / 2.0
    pi = [_overlap_pr(i, eta) for i in range(k)]
    pi.append(1.0 - sum(pi))
    window = np.convolve(bits, np.ones(m, dtype=np.int64), mode="valid")
    matches = (window == m).astype(np.int64)
    padded = np.zeros(n_blocks * block_len, dtype=np.int64)
    padded[: matches.size] = matches[: n_blocks * block_len]
    per_block = padded.reshape(n_blocks, block_len)[:, : block_len - m + 1].sum(axis=1)
    nu = np.bincount(np.minimum(per_block, k), minlength=k + 1)
    expected = n_blocks * np.asarray(pi)
    chi2 = float(((nu - expected) ** 2 / expected).sum())
    return igamc(k / 2.0, chi2 / 2.0)


def overlapping_template_statistics(bits, config):
    return [("overlapping_template", overlapping_template_test(bits, config.template_length))]


# ---------------------------------------------------------------------------
# 10. universal statistical (Maurer)
# ---------------------------------------------------------------------------

_UNIVERSAL_EXPECTED = {
    6: 5.2177052, 7: 6.1962507, 8: 7.1836656, 9: 8.1764248, 10: 9.1723243,
    11: 10.170032, 12: 11.168765, 13: 12.168070, 14: 13.167693, 15: 14.167488,
    16: 15.167379,
}
_UNIVERSAL_VARIANCE = {
    6: 2.954, 7: 3.125, 8: 3.238, 9: 3.311, 10: 3.356, 11: 3.384,
    12: 3.401, 13: 3.410, 14: 3.416, 15: 3.419, 16: 3.421,
}
_UNIVERSAL_THRESHOLDS = [
    (387840, 6), (904960, 7), (2068480, 8), (4654080, 9), (10342400, 10),
    (22753280, 11), (49643520, 12), (107560960, 13), (231669760, 14),
    (496435200, 15), (1059061760, 16),
]


def universal_test(bits):
    n = bits.size
    _check_length(bits, _UNIVERSAL_THRESHOLDS[0][0], "universal")
    level = 6
    for threshold, candidate in _UNIVERSAL_THRESHOLDS:
        if n >= threshold:
            level = candidate
    q = 10 * (1 << level)
    n_blocks = n // level
    k = n_blocks - q
    vals = np.zeros(n_blocks, dtype=np.int64)
    trimmed = bits[: n_blocks * level].reshape(n_blocks, level)
    for j in range(level):
        vals = (vals << 1) | trimmed[:, j]
    order = np.argsort(vals, kind="stable")
    sorted_vals = vals[order]
    positions = order.astype(np.int64) + 1  # 1-based block indices
    prev = np.zeros_like(positions)
    same = sorted_vals[1:] == sorted_vals[:-1]
    prev[1:] = np.where(same, positions[:-1], 0)
    in_test_segment = positions > q
    total = float(np.log2(positions[in_test_segment] - prev[in_test_segment]).sum())
    phi = total / k
    c = 0.7 - 0.8 / level + (4 + 32.0 / level) * k ** (-3.0 / level) / 15.0
    sigma = c * math.sqrt(_UNIVERSAL_VARIANCE[level] / k)
    return erfc(abs(phi - _UNIVERSAL_EXPECTED[level]) / (math.sqrt(2.0) * sigma))


def universal_statistics(bits, config):
    return [("universal", universal_test(bits))]


# ---------------------------------------------------------------------------
# 11. approximate entropy
# ---------------------------------------------------------------------------


def _phi(bits, m):
    if m == 0:
        return 0.0
    counts = np.bincount(_rolling_values(bits, m, cyclic=True), minlength=1 << m)
    counts = counts[counts > 0].astype(np.float64)
    frac = counts / bits.size
    return float((frac * np.log(frac)).sum())


def approximate_entropy_test(bits, m=10):
    _check_length(bits, 1 << (m + 5), "approximate_entropy")
    vals = _rolling_values(bits, m + 1, cyclic=True)
    counts_m1 = np.bincount(vals, minlength=1 << (m + 1))
    counts_m = np.bincount(vals >> 1, minlength=1 << m)

    def entropy_sum(counts):
        c = counts[counts > 0].astype(np.float64) / bits.size
        return float((c * np.log(c)).sum())

    apen = entropy_sum(counts_m) - entropy_sum(counts_m1)
    chi2 = 2.0 * bits.size * (LN2 - apen)
    return igamc(1 << (m - 1), chi2 / 2.0)


def approximate_entropy_statistics(bits, config):
    return [("approximate_entropy", approximate_entropy_test(bits, config.apen_m))]


# ---------------------------------------------------------------------------
# 12/13. random excursions (and variant)
# ---------------------------------------------------------------------------


def _walk_and_cycles(bits):
    s = np.cumsum(bits.astype(np.int64) * 2 - 1)
    zero_positions = np.flatnonzero(s == 0)
    j = zero_positions.size + (1 if s[-1] != 0 else 0)
    return s, zero_positions, j


def excursion_constraint(n):
    return max(0.005 * math.sqrt(n), 500.0)


def random_excursions_statistics(bits, config):
    s, zeros, j = _walk_and_cycles(bits)
    states = [-4, -3, -2, -1, 1, 2, 3, 4]
    names = [f"random_excursions_x{x}" for x in states]
    if j < excursion_constraint(bits.size):
        return [(name, math.nan) for name in names]
    # cycle index of every position: number of zero crossings at or before it
    cycle_of = np.searchsorted(zeros, np.arange(s.size), side="left")
    out = []
    for x, name in zip(states, names):
        visits = cycle_of[s == x]
        per_cycle = np.bincount(visits, minlength=j)
        nu = np.bincount(np.minimum(per_cycle, 5), minlength=6).astype(np.float64)
        ax = abs(x)
        pi = np.empty(6)
        pi[0] = 1.0 - 1.0 / (2.0 * ax)
        for k in range(1, 5):
            pi[k] = (1.0 / (4.0 * ax * ax)) * (1.0 - 1.0 / (2.0 * ax)) ** (k - 1)
        pi[5] = (1.0 / (2.0 * ax)) * (1.0 - 1.0 / (2.0 * ax)) ** 4
        expected = j * pi
        chi2 = float(((nu - expected) ** 2 / expected).sum())
        out.append((name, igamc(2.5, chi2 / 2.0)))
    return out


def random_excursions_variant_statistics(bits, config):
    s, zeros, j = _walk_and_cycles(bits)
    states = [x for x in range(-9, 10) if x != 0]
    names = [f"random_excursions_variant_x{x}" for x in states]
    if j < excursion_constraint(bits.size):
        return [(name, math.nan) for name in names]
    out = []
    for x, name in zip(states, names):
        xi = int(np.count_nonzero(s == x))
        p = erfc(abs(xi - j) / math.sqrt(2.0 * j * (4.0 * abs(x) - 2.0)))
        out.append((name, p))
    return out


# ---------------------------------------------------------------------------
# 14. serial
# ---------------------------------------------------------------------------


def serial_test(bits, m=16):
    _check_length(bits, 1 << (m + 2), "serial")
    n = bits.size

    def psi2(counts, length):
        c = counts.astype(np.float64)
        return float((c * c).sum()) * (1 << length) / n - n

    vals = _rolling_values(bits, m, cyclic=True)
    psi_m = psi2(np.bincount(vals, minlength=1 << m), m)
    psi_m1 = psi2(np.bincount(vals >> 1, minlength=1 << (m - 1)), m - 1)
    psi_m2 = psi2(np.bincount(vals >> 2, minlength=1 << (m - 2)), m - 2)
    del1 = psi_m - psi_m1
    del2 = psi_m - 2.0 * psi_m1 + psi_m2
    p1 = igamc(2 ** (m - 2), del1 / 2.0)
    p2 = igamc(2 ** (m - 3), del2 / 2.0)
    return p1, p2


def serial_statistics(bits, config):
    p1, p2 = serial_test(bits, config.serial_m)
    return [("serial_1", p1), ("serial_2", p2)]


# ---------------------------------------------------------------------------
# 15. linear complexity
# ---------------------------------------------------------------------------

_LC_PI = (0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833)


def linear_complexity_test(bits, m=500):
    _check_length(bits, m, "linear_complexity")
    n_blocks = bits.size // m
    lengths = lfsr_lengths_blocks(np.ascontiguousarray(bits[: n_blocks * m]), m)
    sign = -1.0 if m % 2 else 1.0
    mu = m / 2.0 + (9.0 + (-1.0) ** (m + 1)) / 36.0 - (m / 3.0 + 2.0 / 9.0) / 2.0**m
    t = sign * (lengths - mu) + 2.0 / 9.0
    edges = np.array([-2.5, -1.5, -0.5, 0.5, 1.5, 2.5])
    nu = np.bincount(np.searchsorted(edges, t, side="left"), minlength=7).astype(float)
    expected = n_blocks * np.asarray(_LC_PI)
    chi2 = float(((nu - expected) ** 2 / expected).sum())
    return igamc(3.0, chi2 / 2.0)


def linear_complexity_statistics(bits, config):
    return [("linear_complexity", linear_complexity_test(bits, config.linear_complexity_m))]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

TEST_FUNCTIONS = [
    ("frequency", frequency_statistics),
    ("block_frequency", block_frequency_statistics),
    ("cumulative_sums", cumulative_sums_statistics),
    ("runs", runs_statistics),
    ("longest_run", longest_run_statistics),
    ("rank", rank_statistics),
    ("dft", dft_statistics),
    ("non_overlapping_template", non_overlapping_template_statistics),
    ("overlapping_template", overlapping_template_statistics),
    ("universal", universal_statistics),
    ("approximate_entropy", approximate_entropy_statistics),
    ("random_excursions", random_excursions_statistics),
    ("random_excursions_variant", random_excursions_variant_statistics),
    ("serial", serial_statistics),
    ("linear_complexity", linear_complexity_statistics),
]

TEST_NAMES = [name for name, _ in TEST_FUNCTIONS]
