"""Benchmark harness: result plumbing and the refill-spike signatures.

Wall-clock assertions here use short windows and tolerate scheduler
noise by taking the best of a few attempts, mirroring the harness's
documented many-runs judgment; the full ordering checks live in the
acceptance module.
"""

import pytest

from iotrng import SeedMaterial, make_generator
from iotrng.bench import BenchResult, format_table, measure_latency, measure_throughput

SEED = SeedMaterial(bytes(range(32)), 256)

pytestmark = pytest.mark.bench


def test_throughput_rejects_bad_duration():
    gen = make_generator("xorshift32", seed=1)
    with pytest.raises(ValueError):
        measure_throughput(gen, 0)
    with pytest.raises(ValueError):
        measure_throughput(gen, -1)


def test_latency_rejects_few_iterations():
    gen = make_generator("xorshift32", seed=1)
    with pytest.raises(ValueError):
        measure_latency(gen, iterations=10)


def test_throughput_result_fields():
    gen = make_generator("knuth_lcg", seed=1)
    r = measure_throughput(gen, 0.05)
    assert r.generator == "knuth_lcg" and r.mode == "throughput"
    assert r.kb_per_s > 0 and r.iterations > 0
    assert r.max_us >= r.mean_us >= 0
    assert abs(r.kb_per_s - r.iterations * 4 / 1000.0 / r.duration_s) < 1e-6


def test_latency_result_fields():
    gen = make_generator("tinymt32", seed=1)
    r = measure_latency(gen, iterations=2000, warmup=500)
    assert r.max_us >= r.mean_us > 0
    assert r.stddev_us >= 0
    d = r.to_dict()
    assert d["mode"] == "latency" and d["iterations"] == 2000


def test_crypto_generators_measurable():
    gen = make_generator("sha256prng", seed_material=SEED)
    r = measure_throughput(gen, 0.05)
    assert r.kb_per_s > 0


def test_mt19937_refill_spike():
    best_ratio = 0.0
    for _ in range(3):
        r = measure_latency(make_generator("mt19937", seed=3), iterations=5000, warmup=1000)
        best_ratio = max(best_ratio, r.max_us / r.mean_us)
        if best_ratio > 10:
            break
    assert best_ratio > 10


def test_sha256prng_hash_spike():
    best_ratio = 0.0
    for _ in range(3):
        gen = make_generator("sha256prng", seed_material=SEED)
        r = measure_latency(gen, iterations=5000, warmup=1000)
        best_ratio = max(best_ratio, r.max_us / r.mean_us)
        if best_ratio > 3:
            break
    assert best_ratio > 3


def test_xorshift32_constant_work_dispersion():
    # constant per-call work: dispersion stays low in at least one clean
    # window out of several (scheduler preemptions inflate single windows)
    ratios = []
    for _ in range(5):
        r = measure_latency(make_generator("xorshift32", seed=3), iterations=20000, warmup=2000)
        ratios.append(r.stddev_us / r.mean_us)
        if min(ratios) < 0.5:
            break
    assert min(ratios) < 0.5, ratios


def test_format_table():
    rows = [
        BenchResult("a", "throughput", 1234.5, 0.1, 0.0, 0.1, 100, 1.0),
        BenchResult("b", "latency", 99.0, 1.5, 0.4, 20.0, 100, 1.0),
    ]
    text = format_table(rows)
    assert "generator" in text and "a" in text and "b" in text
