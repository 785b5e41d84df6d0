"""Crypto-secure generators behind a separate API.

Four algorithms are provided: a hash-feedback generator with output
caching (``sha256prng``), the two NIST deterministic random bit
generator mechanisms (``hash_drbg`` over SHA-256, ``ctr_drbg`` over
AES-128 without derivation function), and ``fortuna`` with its 32
entropy pools.  All of them enforce a 128-bit security-strength floor
at instantiation and treat reseeding as an optional, policy-gated
feature.  Cryptographic primitives are reached only through a
:class:`~iotrng.provider.CryptoPrimitiveProvider`.
"""

from __future__ import annotations

import time

from .entropy import SeedMaterial
from .errors import (
    EventTooLargeError,
    InsufficientEntropyError,
    NotInstantiatedError,
    RequestTooLargeError,
    ReseedDisabledError,
    ReseedRequiredError,
    SeedTooShortError,
    UnknownAlgorithmError,
    WrongAlgorithmError,
)
from .provider import default_provider

MIN_STRENGTH_BITS = 128

RESEED_DISABLED = "disabled"
RESEED_ON_DEMAND = "on-demand"
RESEED_INTERVAL = "interval"

_DRBG_MAX_REQUEST_BYTES = 1 << 16      # 2^19 bits per generate call
_DRBG_RESEED_INTERVAL = 1 << 48
_FORTUNA_MAX_REQUEST_BYTES = 1 << 20
_FORTUNA_MIN_POOL_BYTES = 64
_FORTUNA_MIN_RESEED_SECONDS = 0.1
_FORTUNA_POOLS = 32


class Csprng:
    """Base class: strength enforcement, reseed policy, word reads."""

    algorithm = "?"
    min_seed_bytes = 0

    def __init__(self, seed, strength_bits=MIN_STRENGTH_BITS,
                 reseed_policy=RESEED_DISABLED, reseed_interval=0,
                 provider=None, personalization=b""):
        if strength_bits < MIN_STRENGTH_BITS:
            raise InsufficientEntropyError(
                f"security strength {strength_bits} below the "
                f"{MIN_STRENGTH_BITS}-bit floor"
            )
        self._check_seed(seed, strength_bits)
        self.strength_bits = strength_bits
        self.reseed_policy = reseed_policy
        self.reseed_interval = reseed_interval
        if reseed_policy == RESEED_INTERVAL and reseed_interval < 1:
            raise ValueError("interval policy needs reseed_interval >= 1")
        self.provider = provider if provider is not None else default_provider()
        self._personalization = personalization
        self._instantiated = True
        self._requests_since_seed = 0
        self._instantiate(seed.data)

    def _check_seed(self, seed, strength_bits):
        if seed.entropy_bits < strength_bits:
            raise InsufficientEntropyError(
                f"{seed.entropy_bits} claimed bits < strength {strength_bits}"
            )
        if len(seed.data) < self.min_seed_bytes:
            raise SeedTooShortError(
                f"{self.algorithm} needs at least {self.min_seed_bytes} seed bytes, "
                f"got {len(seed.data)}"
            )

    # -- subclass hooks ----------------------------------------------------

    def _instantiate(self, seed_bytes):
        raise NotImplementedError

    def _generate(self, n_bytes):
        raise NotImplementedError

    def _reseed(self, seed_bytes):
        raise NotImplementedError

    # -- public API ---------------------------------------------------------

    def generate(self, n_bytes):
        if not self._instantiated:
            raise NotInstantiatedError(f"{self.algorithm} instance was wiped")
        if n_bytes < 1:
            raise ValueError("n_bytes must be >= 1")
        if (self.reseed_policy == RESEED_INTERVAL
                and self._requests_since_seed >= self.reseed_interval):
            raise ReseedRequiredError(
                f"reseed interval of {self.reseed_interval} requests reached"
            )
        out = self._generate(n_bytes)
        self._requests_since_seed += 1
        return out

    def next_u32(self):
        """One 32-bit word, little-endian from the byte stream."""
        return int.from_bytes(self.generate(4), "little")

    def reseed(self, seed):
        if not self._instantiated:
            raise NotInstantiatedError(f"{self.algorithm} instance was wiped")
        if self.reseed_policy == RESEED_DISABLED:
            raise ReseedDisabledError(
                f"reseed policy of this {self.algorithm} instance is disabled"
            )
        if seed.entropy_bits < self.strength_bits:
            raise InsufficientEntropyError(
                f"{seed.entropy_bits} claimed bits < strength {self.strength_bits}"
            )
        self._reseed(seed.data)
        self._requests_since_seed = 0

    def uninstantiate(self):
        """Wipe the internal state; the instance refuses further use."""
        self._wipe()
        self._instantiated = False

    def _wipe(self):
        raise NotImplementedError


class Sha256Prng(Csprng):
    """Hash-feedback generator: out = H(state), state += out + 1.

    Each hash yields 32 bytes that are cached and served as eight 32-bit
    words before the next hash, so single-word reads cost one hash every
    eighth call.  Only the previous-to-last output is recoverable from a
    compromised state; see the one-step inversion property in the tests.
    """

    algorithm = "sha256prng"

    def _instantiate(self, seed_bytes):
        self._state = int.from_bytes(self.provider.sha256(seed_bytes), "big")
        self._cache = b""

    def _generate(self, n_bytes):
        sha256 = self.provider.sha256
        cache = self._cache
        if len(cache) >= n_bytes:
            self._cache = cache[n_bytes:]
            return cache[:n_bytes]
        parts = [cache]
        have = len(cache)
        state = self._state
        mod = 1 << 256
        while have < n_bytes:
            out = sha256(state.to_bytes(32, "big"))
            state = (state + int.from_bytes(out, "big") + 1) % mod
            parts.append(out)
            have += 32
        self._state = state
        data = b"".join(parts)
        self._cache = data[n_bytes:]
        return data[:n_bytes]

    @property
    def cached_words(self):
        return len(self._cache) // 4

    def _reseed(self, seed_bytes):
        self._state = int.from_bytes(
            self.provider.sha256(self._state.to_bytes(32, "big") + seed_bytes), "big"
        )
        self._cache = b""

    def _wipe(self):
        self._state = 0
        self._cache = b""


class HashDrbg(Csprng):
    """SP 800-90A Hash_DRBG mechanism over SHA-256 (seedlen 440 bits)."""

    algorithm = "hash_drbg"

    _SEEDLEN_BITS = 440
    _SEEDLEN_BYTES = 55

    def _hash_df(self, material, n_bits):
        out = b""
        n_bytes = (n_bits + 7) // 8
        counter = 1
        while len(out) < n_bytes:
            out += self.provider.sha256(
                bytes([counter]) + n_bits.to_bytes(4, "big") + material
            )
            counter += 1
        return out[:n_bytes]

    def _instantiate(self, seed_bytes):
        v = self._hash_df(seed_bytes + self._personalization, self._SEEDLEN_BITS)
        c = self._hash_df(b"\x00" + v, self._SEEDLEN_BITS)
        self._v = int.from_bytes(v, "big")
        self._c = int.from_bytes(c, "big")
        self._reseed_counter = 1

    def _hashgen(self, n_bytes):
        mod = 1 << self._SEEDLEN_BITS
        data = self._v
        sha256 = self.provider.sha256
        parts = []
        for _ in range(-(-n_bytes // 32)):
            parts.append(sha256(data.to_bytes(self._SEEDLEN_BYTES, "big")))
            data = (data + 1) % mod
        return b"".join(parts)[:n_bytes]

    def _generate(self, n_bytes):
        if n_bytes > _DRBG_MAX_REQUEST_BYTES:
            raise RequestTooLargeError(
                f"hash_drbg serves at most {_DRBG_MAX_REQUEST_BYTES} bytes per request"
            )
        if self._reseed_counter > _DRBG_RESEED_INTERVAL:
            raise ReseedRequiredError("hash_drbg reseed counter exhausted")
        out = self._hashgen(n_bytes)
        mod = 1 << self._SEEDLEN_BITS
        h = self.provider.sha256(b"\x03" + self._v.to_bytes(self._SEEDLEN_BYTES, "big"))
        self._v = (
            self._v + int.from_bytes(h, "big") + self._c + self._reseed_counter
        ) % mod
        self._reseed_counter += 1
        return out

    def _reseed(self, seed_bytes, additional=b""):
        material = b"\x01" + self._v.to_bytes(self._SEEDLEN_BYTES, "big") + seed_bytes + additional
        v = self._hash_df(material, self._SEEDLEN_BITS)
        c = self._hash_df(b"\x00" + v, self._SEEDLEN_BITS)
        self._v = int.from_bytes(v, "big")
        self._c = int.from_bytes(c, "big")
        self._reseed_counter = 1

    def _wipe(self):
        self._v = 0
        self._c = 0
        self._reseed_counter = 0


class CtrDrbg(Csprng):
    """SP 800-90A CTR_DRBG over AES-128, no derivation function.

    Without a derivation function the entropy input must cover the full
    seed length (key plus block: 32 bytes), which is why this mechanism
    alone rejects short seeds.
    """

    algorithm = "ctr_drbg"
    min_seed_bytes = 32

    _KEYLEN = 16
    _BLOCKLEN = 16
    _SEEDLEN = 32

    def _instantiate(self, seed_bytes):
        material = seed_bytes[: self._SEEDLEN]
        if self._personalization:
            pad = self._personalization.ljust(self._SEEDLEN, b"\x00")
            material = bytes(a ^ b for a, b in zip(material, pad))
        self._key = b"\x00" * self._KEYLEN
        self._v = 0
        self._update(material)
        self._reseed_counter = 1

    def _keystream(self, n_blocks):
        mod = 1 << (8 * self._BLOCKLEN)
        v = self._v
        counters = bytearray()
        for _ in range(n_blocks):
            v = (v + 1) % mod
            counters += v.to_bytes(self._BLOCKLEN, "big")
        self._v = v
        return self.provider.aes128_encrypt_blocks(self._key, bytes(counters))

    def _update(self, provided=None):
        temp = self._keystream(self._SEEDLEN // self._BLOCKLEN)
        if provided is not None:
            temp = bytes(a ^ b for a, b in zip(temp, provided))
        self._key = temp[: self._KEYLEN]
        self._v = int.from_bytes(temp[self._KEYLEN :], "big")

    def _generate(self, n_bytes):
        if n_bytes > _DRBG_MAX_REQUEST_BYTES:
            raise RequestTooLargeError(
                f"ctr_drbg serves at most {_DRBG_MAX_REQUEST_BYTES} bytes per request"
            )
        if self._reseed_counter > _DRBG_RESEED_INTERVAL:
            raise ReseedRequiredError("ctr_drbg reseed counter exhausted")
        out = self._keystream(-(-n_bytes // self._BLOCKLEN))[:n_bytes]
        self._update()
        self._reseed_counter += 1
        return out

    def _reseed(self, seed_bytes, additional=b""):
        if len(seed_bytes) < self._SEEDLEN:
            raise SeedTooShortError(
                f"ctr_drbg reseed needs {self._SEEDLEN} bytes, got {len(seed_bytes)}"
            )
        material = seed_bytes[: self._SEEDLEN]
        if additional:
            pad = additional.ljust(self._SEEDLEN, b"\x00")
            material = bytes(a ^ b for a, b in zip(material, pad))
        self._update(material)
        self._reseed_counter = 1

    def _wipe(self):
        self._key = b"\x00" * self._KEYLEN
        self._v = 0
        self._reseed_counter = 0


class Fortuna(Csprng):
    """Fortuna generator with 32 entropy pools.

    The stored key is the 32-byte double-SHA-256 of the seed material;
    the block cipher is AES-128 keyed by its first half, per the target
    library behavior.  Events are spread round-robin over the pools and
    pool 0 drives the reseed schedule: at the r-th pool-driven reseed,
    every pool whose index i satisfies 2^i | r is drained into the key.
    """

    algorithm = "fortuna"

    def __init__(self, *args, clock=time.monotonic, **kwargs):
        self._clock = clock
        super().__init__(*args, **kwargs)

    def _instantiate(self, seed_bytes):
        sha256 = self.provider.sha256
        self._key = sha256(sha256(seed_bytes))
        self._counter = 1
        self._pools = [self.provider.sha256_context() for _ in range(_FORTUNA_POOLS)]
        self._pool0_bytes = 0
        self._event_counter = 0
        self._reseed_count = 0
        self._last_reseed = self._clock()

    def _blocks(self, n_blocks):
        mod = 1 << 128
        counter = self._counter
        counters = bytearray()
        for _ in range(n_blocks):
            counters += counter.to_bytes(16, "little")
            counter = (counter + 1) % mod
            if counter == 0:
                counter = 1
        self._counter = counter
        return self.provider.aes128_encrypt_blocks(self._key[:16], bytes(counters))

    def _maybe_pool_reseed(self):
        if self._pool0_bytes < _FORTUNA_MIN_POOL_BYTES:
            return
        now = self._clock()
        if now - self._last_reseed < _FORTUNA_MIN_RESEED_SECONDS:
            return
        self._reseed_count += 1
        r = self._reseed_count
        material = bytearray()
        for i in range(_FORTUNA_POOLS):
            if r % (1 << i) != 0:
                break
            material += self._pools[i].digest()
            self._pools[i] = self.provider.sha256_context()
            if i == 0:
                self._pool0_bytes = 0
        sha256 = self.provider.sha256
        self._key = sha256(sha256(self._key + bytes(material)))
        self._counter = (self._counter + 1) % (1 << 128) or 1
        self._last_reseed = now

    def _generate(self, n_bytes):
        if n_bytes > _FORTUNA_MAX_REQUEST_BYTES:
            raise RequestTooLargeError(
                f"fortuna serves at most {_FORTUNA_MAX_REQUEST_BYTES} bytes per request"
            )
        self._maybe_pool_reseed()
        out = self._blocks(-(-n_bytes // 16))[:n_bytes]
        self._key = self._blocks(2)
        return out

    def add_random_event(self, source_id, data):
        """Feed an entropy event into the pool schedule."""
        if not 0 <= source_id <= 255:
            raise ValueError("source_id must be in 0..255")
        if len(data) > 32:
            raise EventTooLargeError(f"event of {len(data)} bytes exceeds 32")
        if len(data) < 1:
            raise ValueError("event must carry at least one byte")
        pool_index = self._event_counter % _FORTUNA_POOLS
        self._pools[pool_index].update(bytes([source_id, len(data)]) + data)
        if pool_index == 0:
            self._pool0_bytes += len(data) + 2
        self._event_counter += 1

    def _reseed(self, seed_bytes):
        sha256 = self.provider.sha256
        self._key = sha256(sha256(self._key + seed_bytes))
        self._counter = (self._counter + 1) % (1 << 128) or 1

    def _wipe(self):
        self._key = b"\x00" * 32
        self._counter = 0
        self._pools = []
        self._pool0_bytes = 0


ALGORITHMS = {
    cls.algorithm: cls for cls in (Sha256Prng, HashDrbg, CtrDrbg, Fortuna)
}


def instantiate(algorithm, seed, strength_bits=MIN_STRENGTH_BITS, **kwargs):
    """Build a crypto-secure generator by name.

    ``seed`` is :class:`SeedMaterial` (raw bytes are rejected so entropy
    claims can't silently disappear).  General-purpose generator names
    are unknown to this API by design.
    """
    if not isinstance(seed, SeedMaterial):
        raise TypeError("seed must be SeedMaterial (bytes need an entropy claim)")
    try:
        cls = ALGORITHMS[algorithm]
    except KeyError:
        raise UnknownAlgorithmError(
            f"unknown crypto-secure generator {algorithm!r}; "
            f"valid names: {sorted(ALGORITHMS)}"
        ) from None
    return cls(seed, strength_bits=strength_bits, **kwargs)


def fortuna_add_random_event(instance, source_id, data):
    """Pool-update entry point that enforces the algorithm check."""
    if not isinstance(instance, Fortuna):
        raise WrongAlgorithmError("entropy events apply to fortuna instances only")
    instance.add_random_event(source_id, data)
