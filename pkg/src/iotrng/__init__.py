"""Random subsystem for constrained devices.

Separated general-purpose and crypto-secure generator APIs, an entropy
framework with a simulated SRAM-PUF seeder, an embedded statistical
test battery with second-order analysis, and a benchmark harness.
"""

__version__ = "0.1.0"

from .entropy import SeedMaterial, accumulate, dek_hash, host_entropy_source
from .crypto import instantiate as csprng_instantiate
from .factory import make_generator, produce
from .lightweight import gp_seed
from .registry import GeneratorDescriptor, descriptor, generator_names

__all__ = [
    "SeedMaterial",
    "accumulate",
    "csprng_instantiate",
    "dek_hash",
    "descriptor",
    "generator_names",
    "GeneratorDescriptor",
    "gp_seed",
    "host_entropy_source",
    "make_generator",
    "produce",
    "__version__",
]
