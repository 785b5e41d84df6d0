"""Generator identity catalog.

Descriptors carry the properties API layers need to make decisions: the
generator class keeps general-purpose algorithms out of the crypto API,
and the seed entropy requirement drives the entropy accumulator.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lightweight
from .errors import UnknownAlgorithmError

GENERAL_PURPOSE = "general-purpose"
CRYPTO_SECURE = "crypto-secure"
REFERENCE_WEAK = "reference-weak"


@dataclass(frozen=True)
class GeneratorDescriptor:
    name: str
    generator_class: str
    state_bytes: int
    seed_entropy_bits: int
    native_output_bits: int

    def __post_init__(self):
        if self.generator_class not in (GENERAL_PURPOSE, CRYPTO_SECURE, REFERENCE_WEAK):
            raise ValueError(f"unknown generator class {self.generator_class!r}")


def _gp_descriptor(cls, generator_class=GENERAL_PURPOSE):
    return GeneratorDescriptor(
        name=cls.name,
        generator_class=generator_class,
        state_bytes=cls.state_bytes,
        seed_entropy_bits=cls.seed_entropy_bits,
        native_output_bits=cls.native_output_bits,
    )


GP_DESCRIPTORS = {
    cls.name: _gp_descriptor(
        cls, REFERENCE_WEAK if cls is lightweight.Lfsr16 else GENERAL_PURPOSE
    )
    for cls in lightweight.GP_CLASSES
}

CRYPTO_DESCRIPTORS = {
    "sha256prng": GeneratorDescriptor("sha256prng", CRYPTO_SECURE, 32 + 32, 128, 32),
    "hash_drbg": GeneratorDescriptor("hash_drbg", CRYPTO_SECURE, 55 + 55 + 8, 128, 32),
    "ctr_drbg": GeneratorDescriptor("ctr_drbg", CRYPTO_SECURE, 16 + 16 + 8, 128, 32),
    "fortuna": GeneratorDescriptor("fortuna", CRYPTO_SECURE, 32 + 16 + 32 * 104, 128, 32),
}

ALL_DESCRIPTORS = {**GP_DESCRIPTORS, **CRYPTO_DESCRIPTORS}


def descriptor(name):
    try:
        return ALL_DESCRIPTORS[name]
    except KeyError:
        raise UnknownAlgorithmError(
            f"unknown generator {name!r}; valid names: {sorted(ALL_DESCRIPTORS)}"
        ) from None


def generator_names():
    return sorted(ALL_DESCRIPTORS)


def is_crypto(name):
    return descriptor(name).generator_class == CRYPTO_SECURE
