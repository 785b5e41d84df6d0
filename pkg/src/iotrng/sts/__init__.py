"""Embedded statistical test battery with second-order analysis."""

from .bits import BitSequence, bits_from_ascii, bits_from_bytes, bits_to_ascii
from .ks import ks_test_normal, ks_test_uniform
from .suite import SuiteReport, TestConfig, run_suite, second_order_analysis

__all__ = [
    "BitSequence",
    "bits_from_ascii",
    "bits_from_bytes",
    "bits_to_ascii",
    "ks_test_normal",
    "ks_test_uniform",
    "run_suite",
    "second_order_analysis",
    "SuiteReport",
    "TestConfig",
]
