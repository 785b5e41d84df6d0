"""One-sample Kolmogorov-Smirnov tests (asymptotic p-values)."""

from __future__ import annotations

import numpy as np

from .special import kolmogorov_sf, normal_cdf


def _ks_statistic(samples, cdf_values):
    n = samples.size
    d_plus = np.max(np.arange(1, n + 1) / n - cdf_values)
    d_minus = np.max(cdf_values - np.arange(0, n) / n)
    return max(d_plus, d_minus)


def ks_test_normal(samples, min_samples=8):
    """KS test against a normal with moments estimated from the samples.

    Returns the asymptotic p-value.  No small-sample correction is
    applied, which errs on the accepting side; callers treating this as
    a gate should require comfortably more than ``min_samples`` values.
    """
    samples = np.sort(np.asarray(samples, dtype=float))
    if samples.size < min_samples:
        raise ValueError(f"need at least {min_samples} samples")
    mean = samples.mean()
    sd = samples.std(ddof=1)
    if sd == 0.0:
        raise ValueError("zero variance: KS against a normal is undefined")
    z = (samples - mean) / sd
    cdf = np.array([normal_cdf(v) for v in z])
    d = _ks_statistic(samples, cdf)
    return kolmogorov_sf(np.sqrt(samples.size) * d)


def ks_test_uniform(samples):
    """KS test against U(0, 1); used for pooled p-value uniformity."""
    samples = np.sort(np.asarray(samples, dtype=float))
    if samples.size < 2:
        raise ValueError("need at least 2 samples")
    d = _ks_statistic(samples, samples)
    return kolmogorov_sf(np.sqrt(samples.size) * d)
