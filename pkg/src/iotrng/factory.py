"""Construction and streaming helpers shared by the CLI and the battery."""

from __future__ import annotations

from . import crypto, lightweight, registry
from .entropy import SeedMaterial

# Streaming chunk kept under every algorithm's per-request limit.
_CHUNK = 1 << 15


def make_generator(name, seed=None, seed_material=None, **kwargs):
    """Build any registered generator.

    General-purpose names take an integer ``seed``; crypto-secure names
    take :class:`SeedMaterial`.  Passing the wrong kind is an error so
    entropy claims can't be fabricated by accident.
    """
    desc = registry.descriptor(name)
    if desc.generator_class == registry.CRYPTO_SECURE:
        if seed_material is None:
            raise ValueError(f"{name} needs seed_material (bytes + entropy claim)")
        return crypto.instantiate(name, seed_material, **kwargs)
    if seed is None:
        raise ValueError(f"{name} needs an integer seed")
    return lightweight.gp_seed(name, seed)


def seed_material_from_bytes(data, weak_ok=False):
    """Literal bytes as seed material.

    A literal seed is reproducible, hence not truly random; it claims
    its full width only when the caller explicitly accepts that
    (``weak_ok``), otherwise it claims zero entropy and the crypto API
    will reject it.
    """
    claim = 8 * len(data) if weak_ok else 0
    return SeedMaterial(data, claim)


def produce(gen, n_bytes):
    """Read ``n_bytes`` from any generator, honoring per-request limits."""
    if n_bytes <= _CHUNK:
        return gen.generate(n_bytes)
    parts = []
    remaining = n_bytes
    while remaining > 0:
        take = min(_CHUNK, remaining)
        parts.append(gen.generate(take))
        remaining -= take
    return b"".join(parts)
