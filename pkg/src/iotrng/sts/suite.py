"""Battery driver: repeated sequences, proportions, second-order analysis.

A run streams ``sequences`` sequences of ``sequence_bits`` each from one
source, evaluates all fifteen tests per sequence, and then judges every
statistic on two levels: the proportion of sequences whose first-order
p-value clears alpha, and a chi-squared uniformity test over the
p-value histogram (the p2-value).  A statistic passes when both clear
their thresholds; a test passes when all its statistics do.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bits import bits_from_bytes
from .special import igamc
from .tests import TEST_FUNCTIONS

_EXCURSION_TESTS = ("random_excursions", "random_excursions_variant")


@dataclass
class TestConfig:
    sequence_bits: int = 1_000_000
    sequences: int = 100
    alpha: float = 0.01
    alpha2: float = 0.0001
    bins: int = 10
    block_frequency_m: int = 128
    template_length: int = 9
    serial_m: int = 16
    apen_m: int = 10
    linear_complexity_m: int = 500
    workers: int = 1

    def __post_init__(self):
        if self.sequence_bits < 1 or self.sequences < 1:
            raise ValueError("sequence_bits and sequences must be positive")
        if not 0 < self.alpha < 1 or not 0 < self.alpha2 < 1:
            raise ValueError("significance levels must lie in (0, 1)")

    @property
    def sequence_bytes(self):
        return -(-self.sequence_bits // 8)


@dataclass
class StatisticResult:
    name: str
    p_values: np.ndarray        # nan where not applicable
    applicable: int
    passed: int
    threshold: int
    proportion_ok: bool
    p2: float
    p2_ok: bool

    @property
    def verdict(self):
        if self.applicable == 0:
            return "n/a"
        return "pass" if (self.proportion_ok and self.p2_ok) else "fail"

    def summary(self):
        finite = self.p_values[~np.isnan(self.p_values)]
        return {
            "applicable": self.applicable,
            "passed": self.passed,
            "proportion_threshold": self.threshold,
            "p_min": float(finite.min()) if finite.size else None,
            "p_max": float(finite.max()) if finite.size else None,
            "p2": self.p2,
            "verdict": self.verdict,
        }


@dataclass
class TestResult:
    name: str
    statistics: list

    @property
    def verdict(self):
        if all(s.verdict == "n/a" for s in self.statistics):
            return "n/a"
        return "fail" if any(s.verdict == "fail" for s in self.statistics) else "pass"

    @property
    def failed_statistics(self):
        return [s for s in self.statistics if s.verdict == "fail"]


@dataclass
class SuiteReport:
    generator: str
    config: TestConfig
    tests: list = field(default_factory=list)
    skipped_tests: list = field(default_factory=list)

    @property
    def verdict(self):
        return "fail" if any(t.verdict == "fail" for t in self.tests) else "pass"

    @property
    def failed_tests(self):
        return [t for t in self.tests if t.verdict == "fail"]

    def statistic_count(self):
        return sum(len(t.statistics) for t in self.tests)

    def all_p_values(self):
        chunks = [s.p_values for t in self.tests for s in t.statistics]
        pooled = np.concatenate(chunks)
        return pooled[~np.isnan(pooled)]

    def to_json(self, indent=2):
        payload = {
            "generator": self.generator,
            "config": {
                "sequence_bits": self.config.sequence_bits,
                "sequences": self.config.sequences,
                "alpha": self.config.alpha,
                "alpha2": self.config.alpha2,
                "bins": self.config.bins,
            },
            "tests": [
                {
                    "name": t.name,
                    "verdict": t.verdict,
                    "statistics": [
                        {"name": s.name, **s.summary()} for s in t.statistics
                    ],
                }
                for t in self.tests
            ],
            "skipped_tests": self.skipped_tests,
            "suite_verdict": self.verdict,
        }
        return json.dumps(payload, indent=indent, sort_keys=True)

    def to_text(self):
        lines = [f"generator: {self.generator}"]
        lines.append(
            f"sequences: {self.config.sequences} x {self.config.sequence_bits} bits"
        )
        for t in self.tests:
            worst = min(
                (s for s in t.statistics),
                key=lambda s: (s.passed / max(s.applicable, 1), s.p2),
            )
            lines.append(
                f"  {t.name:<28} {t.verdict:<4}"
                f"  worst {worst.passed}/{worst.applicable}"
                f" (need {worst.threshold}) p2={worst.p2:.5f}"
            )
        lines.append(f"suite verdict: {self.verdict}")
        return "\n".join(lines)


def proportion_threshold(m, alpha):
    """Minimum passing count out of m at first-order level alpha.

    The confidence-interval bound p_hat - 3*sqrt(p_hat(1-p_hat)/m) maps
    to a whole count by rounding down, which yields the conventional
    96-of-100 floor at alpha = 0.01.
    """
    p_hat = 1.0 - alpha
    bound = p_hat - 3.0 * math.sqrt(p_hat * (1.0 - p_hat) / m)
    return int(math.floor(bound * m))


def second_order_analysis(p_values, config):
    """Proportion and uniformity judgment for one statistic.

    Returns (passed, applicable, threshold, proportion_ok, p2, p2_ok).
    NaN entries mark sequences where the statistic did not apply and
    reduce the sample size, as the excursion tests require.
    """
    p_values = np.asarray(p_values, dtype=float)
    finite = p_values[~np.isnan(p_values)]
    applicable = int(finite.size)
    if applicable == 0:
        return 0, 0, 0, False, 0.0, False
    passed = int(np.count_nonzero(finite >= config.alpha))
    threshold = proportion_threshold(applicable, config.alpha)
    proportion_ok = passed >= threshold
    bin_index = np.minimum((finite * config.bins).astype(int), config.bins - 1)
    counts = np.bincount(bin_index, minlength=config.bins)
    expected = applicable / config.bins
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    p2 = igamc((config.bins - 1) / 2.0, chi2 / 2.0)
    p2_ok = p2 >= config.alpha2
    return passed, applicable, threshold, proportion_ok, p2, p2_ok


def evaluate_sequence(bits, config, only_tests=None, skip_short=False):
    """All first-order statistics of one sequence -> {name: p or nan}.

    With ``skip_short`` set, tests whose length preconditions fail are
    left out instead of raising; the skip set depends only on the
    configured length, so it is identical across sequences.
    """
    results = {}
    for test_name, fn in TEST_FUNCTIONS:
        if only_tests is not None and test_name not in only_tests:
            continue
        try:
            pairs = fn(bits, config)
        except ValueError:
            if skip_short:
                continue
            raise
        for stat_name, p in pairs:
            results[stat_name] = p
    return results


def _sequence_worker(args):
    data, config, only_tests, skip_short = args
    return evaluate_sequence(
        bits_from_bytes(data)[: config.sequence_bits], config, only_tests, skip_short
    )


def run_suite(source, config=None, generator_name="stream", only_tests=None,
              skip_short=False):
    """Run the battery over ``sequences`` consecutive sequences.

    ``source`` is a callable ``source(n_bytes) -> bytes`` (a generator
    adapter), a bytes object long enough for the whole run, or an
    iterable of per-sequence byte strings.  ``skip_short`` drops tests
    the configured length cannot support (recorded in the report)
    instead of raising.
    """
    config = config or TestConfig()
    sequences = _collect_sequences(source, config)

    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            per_seq = list(
                pool.map(
                    _sequence_worker,
                    [(data, config, only_tests, skip_short) for data in sequences],
                    chunksize=4,
                )
            )
    else:
        per_seq = [
            evaluate_sequence(
                bits_from_bytes(data)[: config.sequence_bits], config,
                only_tests, skip_short,
            )
            for data in sequences
        ]

    report = SuiteReport(generator=generator_name, config=config)
    executed = {_owning_test(name) for name in per_seq[0]}
    report.skipped_tests = [
        name for name, _ in TEST_FUNCTIONS
        if (only_tests is None or name in only_tests) and name not in executed
    ]
    stat_names = list(per_seq[0])
    columns = {
        name: np.array([seq[name] for seq in per_seq], dtype=float)
        for name in stat_names
    }
    for test_name, fn in TEST_FUNCTIONS:
        if only_tests is not None and test_name not in only_tests:
            continue
        stats = []
        for stat_name in stat_names:
            if not stat_name.startswith(test_name):
                continue
            # guard against prefix collisions between distinct tests
            if _owning_test(stat_name) != test_name:
                continue
            p_values = columns[stat_name]
            passed, applicable, threshold, prop_ok, p2, p2_ok = second_order_analysis(
                p_values, config
            )
            stats.append(
                StatisticResult(
                    name=stat_name,
                    p_values=p_values,
                    applicable=applicable,
                    passed=passed,
                    threshold=threshold,
                    proportion_ok=prop_ok,
                    p2=p2,
                    p2_ok=p2_ok,
                )
            )
        report.tests.append(TestResult(name=test_name, statistics=stats))
    return report


def _owning_test(stat_name):
    owner = ""
    for test_name, _ in TEST_FUNCTIONS:
        if stat_name.startswith(test_name) and len(test_name) > len(owner):
            owner = test_name
    return owner


def _collect_sequences(source, config):
    seq_bytes = config.sequence_bytes
    if callable(source):
        return [source(seq_bytes) for _ in range(config.sequences)]
    if isinstance(source, (bytes, bytearray, memoryview)):
        data = bytes(source)
        needed = seq_bytes * config.sequences
        if len(data) < needed:
            raise ValueError(f"need {needed} bytes of input, got {len(data)}")
        return [data[i * seq_bytes : (i + 1) * seq_bytes] for i in range(config.sequences)]
    sequences = []
    for data in source:
        if len(data) < seq_bytes:
            raise ValueError("input sequence shorter than configured length")
        sequences.append(bytes(data[:seq_bytes]))
        if len(sequences) == config.sequences:
            return sequences
    raise ValueError(
        f"source exhausted after {len(sequences)} of {config.sequences} sequences"
    )
