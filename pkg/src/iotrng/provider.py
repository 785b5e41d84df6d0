"""Cryptographic primitive provider.

The crypto generators never call hash or cipher code directly; they go
through this seam so alternative implementations (hardware-accelerated,
vendored, test doubles) can be substituted without touching generator
logic.  Providers must be stateless with respect to their inputs and
safe to call from multiple threads.
"""

from __future__ import annotations

import hashlib

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

_SHA256_KAT_INPUT = b"abc"
_SHA256_KAT_DIGEST = bytes.fromhex(
    "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
)
_AES128_KAT_KEY = bytes.fromhex("000102030405060708090a0b0c0d0e0f")
_AES128_KAT_PLAIN = bytes.fromhex("00112233445566778899aabbccddeeff")
_AES128_KAT_CIPHER = bytes.fromhex("69c4e0d86a7b0430d8cdb78070b4c55a")


class ProviderSelfTestError(RuntimeError):
    """A primitive failed its known-answer self-test."""


class CryptoPrimitiveProvider:
    """Software provider backed by hashlib and the cryptography package.

    A known-answer self-test runs once at construction; a provider that
    fails it never becomes usable.
    """

    def __init__(self):
        self.self_test()

    def sha256(self, data: bytes) -> bytes:
        return hashlib.sha256(data).digest()

    def sha256_context(self):
        """Incremental hash context (update/digest), for entropy pools."""
        return hashlib.sha256()

    def aes128_encrypt_block(self, key: bytes, block: bytes) -> bytes:
        if len(key) != 16 or len(block) != 16:
            raise ValueError("aes128_encrypt_block expects a 16-byte key and block")
        return self.aes128_encrypt_blocks(key, block)

    def aes128_encrypt_blocks(self, key: bytes, blocks: bytes) -> bytes:
        """ECB over a multiple of 16 bytes; convenience over the block call."""
        enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
        return enc.update(blocks) + enc.finalize()

    def self_test(self):
        if self.sha256(_SHA256_KAT_INPUT) != _SHA256_KAT_DIGEST:
            raise ProviderSelfTestError("sha256 known-answer test failed")
        if self.aes128_encrypt_block(_AES128_KAT_KEY, _AES128_KAT_PLAIN) != _AES128_KAT_CIPHER:
            raise ProviderSelfTestError("aes128 known-answer test failed")


_default = None


def default_provider() -> CryptoPrimitiveProvider:
    global _default
    if _default is None:
        _default = CryptoPrimitiveProvider()
    return _default
