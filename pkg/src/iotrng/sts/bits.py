"""Bit sequence representation and stream expansion.

The battery consumes bits in a fixed order: the byte stream is walked
little-endian word-wise (bytes in stream order) and every byte expands
most-significant bit first.  The same expansion backs the CLI's ASCII
export so external suites see exactly the stream tested here.
"""

from __future__ import annotations

import numpy as np


def bits_from_bytes(data):
    """Byte string -> uint8 array of 0/1, MSB-first within each byte."""
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


def bits_from_words(words):
    """32-bit words -> bits via little-endian byte serialization."""
    data = np.asarray(words, dtype="<u4").tobytes()
    return bits_from_bytes(data)


def bits_from_ascii(text):
    """'0'/'1' characters (whitespace ignored) -> uint8 bit array."""
    arr = np.frombuffer(text.encode() if isinstance(text, str) else text, dtype=np.uint8)
    arr = arr[(arr == 0x30) | (arr == 0x31)]
    if arr.size == 0:
        raise ValueError("no '0'/'1' characters found")
    return (arr - 0x30).astype(np.uint8)


def bits_to_ascii(bits):
    return (np.asarray(bits, dtype=np.uint8) + 0x30).tobytes().decode()


class BitSequence:
    """A fixed-length bit string, unpacked one byte per bit internally."""

    def __init__(self, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 1 or bits.size < 1:
            raise ValueError("need a nonempty 1-D bit array")
        if bits.max(initial=0) > 1:
            raise ValueError("bits must be 0/1")
        self.bits = bits

    @classmethod
    def from_bytes(cls, data, n_bits=None):
        bits = bits_from_bytes(data)
        if n_bits is not None:
            bits = bits[:n_bits]
        return cls(bits)

    @classmethod
    def from_ascii(cls, text):
        return cls(bits_from_ascii(text))

    def __len__(self):
        return int(self.bits.size)
