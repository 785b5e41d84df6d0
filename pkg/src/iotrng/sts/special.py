"""Special functions used by the battery.

Thin wrappers over the cephes-derived scipy implementations, which are
the same function family the classic C test suites link against.  The
test suite pins them against high-precision reference values.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp


def erfc(x):
    return float(_sp.erfc(x))


def igamc(a, x):
    """Regularized upper incomplete gamma Q(a, x)."""
    return float(_sp.gammaincc(a, x))


def normal_cdf(x):
    return float(0.5 * _sp.erfc(-x / np.sqrt(2.0)))


def kolmogorov_sf(x):
    """Survival function of the Kolmogorov distribution."""
    return float(_sp.kolmogorov(x))


def log_gamma(x):
    return float(_sp.gammaln(x))
