"""Throughput and per-call latency measurement.

Throughput counts 32-bit words produced in a fixed wall-clock interval:
general-purpose generators stream through their bulk word interface,
crypto-secure generators serve one word per request (the hash generator
through its output cache, the block-cipher generators recomputing per
request, which is their defining cost).  Latency timestamps individual
blocking calls so buffer-refill spikes stay visible.

Absolute numbers are host-bound; only ratios and orderings carry over
between machines.
"""

from __future__ import annotations

import gc
import math
import threading
import time
from dataclasses import dataclass

from .registry import CRYPTO_SECURE, descriptor

_GP_CHUNK_WORDS = 4096
_WARMUP_CALLS = 100_000
_MIN_CLOCK_RESOLUTION_NS = 100

# measurement loops own the process; concurrent runs would skew each other
_bench_lock = threading.Lock()


@dataclass
class BenchResult:
    generator: str
    mode: str
    kb_per_s: float
    mean_us: float
    stddev_us: float
    max_us: float
    iterations: int
    duration_s: float
    clock_warning: bool = False

    def to_dict(self):
        return {
            "generator": self.generator,
            "mode": self.mode,
            "rate_kb_s": round(self.kb_per_s, 3),
            "avg_us_per_word": round(self.mean_us, 4),
            "stddev_us": round(self.stddev_us, 4),
            "max_us": round(self.max_us, 4),
            "iterations": self.iterations,
            "duration_s": round(self.duration_s, 3),
            "clock_warning": self.clock_warning,
        }


def _word_reader(gen):
    name = getattr(gen, "name", None) or getattr(gen, "algorithm", "?")
    if descriptor(name).generator_class == CRYPTO_SECURE:
        return gen.next_u32, 1
    words = gen.words

    def read_chunk():
        words(_GP_CHUNK_WORDS)

    return read_chunk, _GP_CHUNK_WORDS


def measure_throughput(gen, duration_seconds=10.0):
    """Count words produced within the interval; rate in kB/s (1 kB = 1000 B)."""
    if duration_seconds <= 0:
        raise ValueError("duration must be positive")
    read, words_per_call = _word_reader(gen)
    with _bench_lock:
        warm_deadline = time.perf_counter() + min(0.2, duration_seconds / 5)
        while time.perf_counter() < warm_deadline:
            read()
        count = 0
        start = time.perf_counter()
        deadline = start + duration_seconds
        now = start
        while now < deadline:
            read()
            count += words_per_call
            now = time.perf_counter()
        elapsed = now - start
    name = getattr(gen, "name", None) or getattr(gen, "algorithm", "?")
    mean_us = elapsed / count * 1e6
    return BenchResult(
        generator=name,
        mode="throughput",
        kb_per_s=count * 4 / 1000.0 / elapsed,
        mean_us=mean_us,
        stddev_us=0.0,
        max_us=mean_us,
        iterations=count,
        duration_s=elapsed,
    )


def _clock_resolution_ns():
    best = None
    for _ in range(50):
        a = time.perf_counter_ns()
        b = time.perf_counter_ns()
        while b == a:
            b = time.perf_counter_ns()
        delta = b - a
        best = delta if best is None else min(best, delta)
    return best


def measure_latency(gen, iterations=100_000, warmup=_WARMUP_CALLS):
    """Per-call wall times of ``next_u32``; mean, stddev, max in microseconds."""
    if iterations < 1000:
        raise ValueError("need at least 1000 iterations for stable statistics")
    next_u32 = gen.next_u32
    clock = time.perf_counter_ns
    with _bench_lock:
        for _ in range(warmup):
            next_u32()
        gc_was_enabled = gc.isenabled()
        gc.disable()  # collector pauses would masquerade as generator spikes
        try:
            total = 0
            total_sq = 0.0
            worst = 0
            start = clock()
            for _ in range(iterations):
                t0 = clock()
                next_u32()
                dt = clock() - t0
                total += dt
                total_sq += float(dt) * dt
                if dt > worst:
                    worst = dt
            duration = (clock() - start) / 1e9
        finally:
            if gc_was_enabled:
                gc.enable()
    mean_ns = total / iterations
    var_ns = max(total_sq / iterations - mean_ns**2, 0.0)
    name = getattr(gen, "name", None) or getattr(gen, "algorithm", "?")
    return BenchResult(
        generator=name,
        mode="latency",
        kb_per_s=4 * iterations / 1000.0 / duration,
        mean_us=mean_ns / 1000.0,
        stddev_us=math.sqrt(var_ns) / 1000.0,
        max_us=worst / 1000.0,
        iterations=iterations,
        duration_s=duration,
        clock_warning=_clock_resolution_ns() > _MIN_CLOCK_RESOLUTION_NS,
    )


def format_table(results):
    header = f"{'generator':<18} {'mode':<10} {'rate kB/s':>12} {'avg µs/#':>10} {'σ µs':>9} {'max µs':>9}"
    lines = [header, "-" * len(header)]
    for r in results:
        lines.append(
            f"{r.generator:<18} {r.mode:<10} {r.kb_per_s:>12.1f} "
            f"{r.mean_us:>10.3f} {r.stddev_us:>9.3f} {r.max_us:>9.2f}"
        )
    return "\n".join(lines)
