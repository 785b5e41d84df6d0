"""Simulated SRAM power-up patterns and the boot-time seeder.

Each simulated device draws a per-bit power-up bias once at manufacture
time; reads are independent Bernoulli trials per bit.  The default
parameters are calibrated so that 50 reads of 1 kB land in the measured
ranges for real parts: relative min-entropy around 5 %, Hamming weight
around 50 %, inter-device distance around 50 %.

The seeder derives a 32-bit seed from a 1 kB power-up read compressed
with the DEK fold.  Because only a power-off cycle refreshes the memory
pattern, a marker word in a reserved cell distinguishes soft resets: if
the marker survived, the previous seed is advanced arithmetically and
re-hashed instead of re-reading memory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .entropy import dek_hash, hamming_distance, hamming_weight, min_entropy_per_bit
from .errors import ReadWithoutPowerCycleError
from .sts.ks import ks_test_normal

MASK32 = 0xFFFFFFFF


@dataclass
class PufParams:
    """Per-cell bias model: mixture of stable-0, unstable, stable-1 cells."""

    bias_levels: tuple = (0.005, 0.5, 0.995)
    bias_weights: tuple = (0.47, 0.06, 0.47)
    bias_jitter: float = 0.003

    def __post_init__(self):
        if abs(sum(self.bias_weights) - 1.0) > 1e-9:
            raise ValueError("bias weights must sum to 1")


@dataclass
class SeederNvState:
    """Reserved SRAM region: survives soft resets, lost at power-off."""

    marker_present: bool = False
    marker_value: int = 0
    counter: int = 0
    last_seed: int = 0

    def clear(self):
        self.marker_present = False
        self.marker_value = 0
        self.counter = 0
        self.last_seed = 0


class PufDeviceModel:
    """One device's uninitialized SRAM plus its reserved seeder cells."""

    def __init__(self, device_id, n_bytes=1024, params=None, rng=None):
        self.device_id = device_id
        self.n_bytes = n_bytes
        self.params = params or PufParams()
        # the simulation stream is dedicated and never the generator under test
        self._rng = rng if rng is not None else np.random.default_rng()
        self._biases = self._draw_biases()
        self._powered = False
        self._read_since_power_up = False
        self.nv = SeederNvState()

    def _draw_biases(self):
        p = self.params
        n_bits = 8 * self.n_bytes
        levels = self._rng.choice(p.bias_levels, size=n_bits, p=p.bias_weights)
        biases = levels + self._rng.normal(0.0, p.bias_jitter, size=n_bits)
        return np.clip(biases, 0.0, 1.0)

    def power_off(self):
        """Drop power: memory pattern decays, the marker region with it."""
        self._powered = False
        self._read_since_power_up = False
        self.nv.clear()

    def power_up_read(self, n_bytes=None):
        """Sample the power-up state of the first ``n_bytes`` of memory.

        Valid once per power cycle; a second read without power-off
        would observe initialized memory, so it is refused.
        """
        if n_bytes is None:
            n_bytes = self.n_bytes
        if n_bytes > self.n_bytes:
            raise ValueError(f"device has only {self.n_bytes} bytes of SRAM")
        if self._powered and self._read_since_power_up:
            raise ReadWithoutPowerCycleError(
                f"device {self.device_id!r} was not power-cycled since the last read"
            )
        self._powered = True
        self._read_since_power_up = True
        bits = (self._rng.random(8 * n_bytes) < self._biases[: 8 * n_bytes])
        return np.packbits(bits.astype(np.uint8)).tobytes()

    def fresh_marker_word(self):
        return int(self._rng.integers(1, 1 << 32))


def seeder_startup(device):
    """Boot-time seed derivation; returns the 32-bit seed.

    Cold boot (no marker): hash a full power-up read; plant a marker.
    Soft reset (marker intact): advance the stored seed by the bumped
    reset counter and re-hash, without touching memory.
    """
    nv = device.nv
    if not nv.marker_present:
        read = device.power_up_read(device.n_bytes)
        seed = dek_hash(read)
        nv.marker_present = True
        nv.marker_value = device.fresh_marker_word()
        nv.counter = 0
    else:
        nv.counter = (nv.counter + 1) & MASK32
        material = ((nv.last_seed + nv.counter) & MASK32).to_bytes(4, "little")
        seed = dek_hash(material)
    nv.last_seed = seed
    return seed


def cold_boot_seed(device):
    """Power-cycle the device and run the seeder (fresh memory read)."""
    device.power_off()
    return seeder_startup(device)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


@dataclass
class PufExperimentResult:
    devices: list
    reads: int
    read_bytes: int
    weights: dict = field(default_factory=dict)
    min_entropy_rel: dict = field(default_factory=dict)
    min_entropy_bits: dict = field(default_factory=dict)
    pairwise_distance: dict = field(default_factory=dict)
    seed_entropy_curve: list = field(default_factory=list)
    seed_distance_ks_p: dict = field(default_factory=dict)
    inter_device_seed_distance: float = 0.0

    def to_json(self):
        payload = {
            "devices": self.devices,
            "reads": self.reads,
            "read_bytes": self.read_bytes,
            "hamming_weight": self.weights,
            "min_entropy_relative": self.min_entropy_rel,
            "min_entropy_bits": self.min_entropy_bits,
            "pairwise_distance": {f"{a}-{b}": v for (a, b), v in self.pairwise_distance.items()},
            "seed_entropy_curve": self.seed_entropy_curve,
            "seed_distance_ks_p": self.seed_distance_ks_p,
            "inter_device_seed_distance": self.inter_device_seed_distance,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self):
        lines = [
            f"devices={len(self.devices)} reads={self.reads} bytes={self.read_bytes}",
            "",
            "device  weight  min-entropy  (bits)",
        ]
        for d in self.devices:
            lines.append(
                f"{d:>6}  {self.weights[d]*100:6.2f}%  {self.min_entropy_rel[d]*100:10.2f}%"
                f"  {self.min_entropy_bits[d]:8.1f}"
            )
        lines += ["", "pair    distance"]
        for (a, b), v in sorted(self.pairwise_distance.items()):
            lines.append(f"{a}-{b:<4}  {v*100:6.2f}%")
        if self.seed_entropy_curve:
            lines += ["", "seed min-entropy vs read length"]
            for n, bits in self.seed_entropy_curve:
                lines.append(f"{n:>6} B  {bits:6.2f} bit")
        if self.seed_distance_ks_p:
            lines += ["", "seed distance normality (KS p-value)"]
            for d, p in sorted(self.seed_distance_ks_p.items()):
                lines.append(f"{d:>6}  {p:.4f}")
            lines.append(
                f"inter-device seed distance {self.inter_device_seed_distance*100:.2f}%"
            )
        return "\n".join(lines)


def make_devices(n_devices, read_bytes=1024, params=None, seed=2024):
    """Device fleet with per-device independent simulation streams."""
    root = np.random.SeedSequence(seed)
    return [
        PufDeviceModel(f"D{i}", n_bytes=read_bytes, params=params,
                       rng=np.random.default_rng(child))
        for i, child in enumerate(root.spawn(n_devices))
    ]


def collect_reads(device, n_reads, read_bytes):
    reads = []
    for _ in range(n_reads):
        device.power_off()
        reads.append(device.power_up_read(read_bytes))
    return reads


def seed_entropy_curve(device, n_reads=200, lengths=None):
    """Min-entropy of the 32-bit DEK seed as the read length grows.

    Estimated per bit over ``n_reads`` cold-boot seeds per length; the
    curve rises with input length and saturates near (but below) the
    seed width, the estimator being biased low at finite sample sizes.
    """
    if lengths is None:
        lengths = [n for n in (16, 64, 256, 512, 1024) if n <= device.n_bytes]
        if not lengths or lengths[-1] != device.n_bytes:
            lengths.append(device.n_bytes)
    reads = collect_reads(device, n_reads, max(lengths))
    curve = []
    for n in lengths:
        seeds = [dek_hash(r[:n]).to_bytes(4, "big") for r in reads]
        _, bits = min_entropy_per_bit(seeds)
        curve.append((n, bits))
    return curve


def run_puf_experiment(n_devices=5, n_reads=50, read_bytes=1024, params=None,
                       seed=2024, with_seed_analysis=True, curve_reads=200):
    """The full enrollment-style measurement report on a simulated fleet."""
    devices = make_devices(n_devices, read_bytes, params, seed)
    result = PufExperimentResult(
        devices=[d.device_id for d in devices], reads=n_reads, read_bytes=read_bytes
    )
    all_reads = {}
    for dev in devices:
        reads = collect_reads(dev, n_reads, read_bytes)
        all_reads[dev.device_id] = reads
        joined = b"".join(reads)
        result.weights[dev.device_id] = hamming_weight(joined)
        rel, bits = min_entropy_per_bit(reads)
        result.min_entropy_rel[dev.device_id] = rel
        result.min_entropy_bits[dev.device_id] = bits
    first = devices[0].device_id
    for dev in devices[1:]:
        result.pairwise_distance[(first, dev.device_id)] = hamming_distance(
            all_reads[first][0], all_reads[dev.device_id][0]
        )
    if with_seed_analysis:
        result.seed_entropy_curve = seed_entropy_curve(devices[0], n_reads=curve_reads)
        per_device_seeds = {}
        for dev in devices:
            seeds = [cold_boot_seed(dev) for _ in range(51)]
            per_device_seeds[dev.device_id] = seeds
            dist = [
                hamming_distance(a.to_bytes(4, "big"), b.to_bytes(4, "big"))
                for a, b in zip(seeds, seeds[1:])
            ]
            result.seed_distance_ks_p[dev.device_id] = ks_test_normal(dist)
        inter = []
        for a, b in zip(devices, devices[1:]):
            sa = per_device_seeds[a.device_id]
            sb = per_device_seeds[b.device_id]
            for i in range(20):
                inter.append(
                    hamming_distance(sa[i].to_bytes(4, "big"), sb[i].to_bytes(4, "big"))
                )
        result.inter_device_seed_distance = float(np.mean(inter))
    return result
