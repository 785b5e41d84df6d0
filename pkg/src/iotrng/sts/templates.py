"""Aperiodic template table for the non-overlapping matching test.

A template is aperiodic when no proper prefix equals the same-length
suffix, i.e. the pattern cannot overlap itself at any shift.  The
classic suite ships these as data files generated in ascending numeric
order; generating them on the fly gives the identical table (148
patterns at length 9).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def _is_aperiodic(value, m):
    bits = [(value >> (m - 1 - i)) & 1 for i in range(m)]
    for shift in range(1, m):
        if bits[shift:] == bits[: m - shift]:
            return False
    return True


@lru_cache(maxsize=None)
def aperiodic_templates(m):
    """All aperiodic templates of length m, ascending, as uint16 values."""
    values = [v for v in range(1 << m) if _is_aperiodic(v, m)]
    return np.array(values, dtype=np.uint32)


def template_bits_string(value, m):
    return format(int(value), f"0{m}b")
