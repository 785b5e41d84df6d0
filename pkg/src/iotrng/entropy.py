"""Entropy sources, accumulation, and seed-quality metrics.

A seed travels as :class:`SeedMaterial`: raw bytes plus the number of
entropy bits the producing side is willing to claim for them.  The
accumulator drains one or more sources until a requested claim is met
and compresses the pooled samples; the metric functions quantify how
good a physical source actually is.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np

from .errors import EntropyExhaustedError

DEK_MASK = 0xFFFFFFFF


@dataclass(frozen=True)
class SeedMaterial:
    """Bytes plus the entropy claim attached to them."""

    data: bytes
    entropy_bits: int

    def __post_init__(self):
        if self.entropy_bits < 0:
            raise ValueError("entropy claim must be nonnegative")
        if self.entropy_bits > 8 * len(self.data):
            raise ValueError(
                f"claim of {self.entropy_bits} bits exceeds "
                f"{8 * len(self.data)} bits of material"
            )


class EntropySource:
    """One pollable source of (claimed) entropy.

    ``entropy_bits_per_sample`` is the claim attached to one sample of
    ``sample_size`` bytes.  A source that cannot currently deliver must
    report itself unavailable instead of returning weak bytes.
    """

    def __init__(self, source_id, entropy_bits_per_sample, sample_size,
                 read_fn, available_fn=None):
        if entropy_bits_per_sample > 8 * sample_size:
            raise ValueError("per-sample claim exceeds sample size")
        self.source_id = source_id
        self.entropy_bits_per_sample = entropy_bits_per_sample
        self.sample_size = sample_size
        self._read = read_fn
        self._available = available_fn

    @property
    def available(self):
        if self._available is None:
            return True
        return bool(self._available())

    def sample(self, n_bytes=None):
        if n_bytes is None:
            n_bytes = self.sample_size
        data = self._read(n_bytes)
        if len(data) != n_bytes:
            raise EntropyExhaustedError(
                f"source {self.source_id!r} returned {len(data)} of {n_bytes} bytes"
            )
        return data


def host_entropy_source(sample_size=16):
    """Source backed by the host OS randomness facility (8 bits/byte)."""

    def read(n):
        return os.urandom(n)

    def available():
        try:
            os.urandom(1)
            return True
        except NotImplementedError:
            return False

    return EntropySource(
        source_id="host-os",
        entropy_bits_per_sample=8 * sample_size,
        sample_size=sample_size,
        read_fn=read,
        available_fn=available,
    )


def accumulate(sources, required_bits):
    """Pool samples round-robin until the claimed entropy meets the target.

    The pooled samples are compressed with counter-mode SHA-256 so the
    output length matches the request; the returned claim never exceeds
    either the request or the sum of the source claims.

    Raises :class:`EntropyExhaustedError` if every source reports
    unavailable before the target is met, so the caller (typically a
    CSPRNG instantiation) can refuse to start instead of running weak.
    """
    if required_bits < 1:
        raise ValueError("required_bits must be >= 1")
    pooled = bytearray()
    claimed = 0
    while claimed < required_bits:
        progress = False
        for source in sources:
            if claimed >= required_bits:
                break
            if not source.available:
                continue
            pooled += source.sample(source.sample_size)
            claimed += source.entropy_bits_per_sample
            progress = True
        if not progress:
            raise EntropyExhaustedError(
                f"entropy sources exhausted at {claimed}/{required_bits} bits"
            )
    n_out = (required_bits + 7) // 8
    out = bytearray()
    counter = 0
    while len(out) < n_out:
        out += hashlib.sha256(bytes(pooled) + counter.to_bytes(4, "big")).digest()
        counter += 1
    return SeedMaterial(bytes(out[:n_out]), min(required_bits, claimed))


# ---------------------------------------------------------------------------
# seed compression and quality metrics
# ---------------------------------------------------------------------------


def dek_hash(data, init=None):
    """Fold ``data`` into 32 bits: h = ((h << 5) ^ (h >> 27)) ^ byte.

    ``init`` defaults to the input length, which makes hashes of
    different-length reads distinct even for all-zero input.
    """
    h = (len(data) if init is None else init) & DEK_MASK
    for byte in data:
        h = (((h << 5) & DEK_MASK) ^ (h >> 27)) ^ byte
    return h


def as_bit_matrix(reads):
    """Rows of equal-length byte strings -> (R, 8*B) matrix of 0/1."""
    lengths = {len(r) for r in reads}
    if len(lengths) != 1:
        raise ValueError("reads must all have the same length")
    arr = np.frombuffer(b"".join(reads), dtype=np.uint8).reshape(len(reads), -1)
    return np.unpackbits(arr, axis=1)


def min_entropy_per_bit(reads):
    """Most-common-value min-entropy over repeated reads.

    ``reads`` is an (R, B) 0/1 matrix, R >= 2 reads of B bits each (byte
    strings are accepted and expanded).  Returns ``(relative, total)``:
    the mean per-bit min-entropy in [0, 1] and the sum over all bits.
    """
    if isinstance(reads, (list, tuple)):
        reads = as_bit_matrix(reads)
    reads = np.asarray(reads)
    if reads.ndim != 2:
        raise ValueError("reads must be a 2-D bit matrix")
    if reads.shape[0] < 2:
        raise ValueError("need at least 2 reads")
    p1 = reads.mean(axis=0)
    p_max = np.maximum(p1, 1.0 - p1)
    h = -np.log2(p_max)
    return float(h.mean()), float(h.sum())


def hamming_weight(bits):
    """Fraction of ones in a bit vector (or byte string)."""
    if isinstance(bits, (bytes, bytearray)):
        bits = np.unpackbits(np.frombuffer(bits, dtype=np.uint8))
    bits = np.asarray(bits)
    return float(bits.mean())


def hamming_distance(a, b):
    """Fraction of differing positions between two equal-length bit vectors."""
    if isinstance(a, (bytes, bytearray)):
        a = np.unpackbits(np.frombuffer(a, dtype=np.uint8))
    if isinstance(b, (bytes, bytearray)):
        b = np.unpackbits(np.frombuffer(b, dtype=np.uint8))
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("bit vectors must have equal length")
    return float(np.mean(a != b))
