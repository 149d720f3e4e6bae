"""Special-function primitives shared by every module.

Thin wrappers so the rest of the package never imports scipy directly and
the accuracy contract lives in one place: absolute error below 1e-7 for the
distribution functions, 1e-6 for the normal quantile, and the binomial CDF
exact by summation.
"""

import math

import numpy as np
from scipy import special as _sp

__all__ = ["std_normal_cdf", "std_normal_quantile", "chisq_cdf", "binom_cdf"]


def std_normal_cdf(x):
    """N(0,1) distribution function, vectorized."""
    return _sp.ndtr(x)


def std_normal_quantile(p):
    """Inverse of std_normal_cdf on the open interval (0, 1)."""
    p_arr = np.asarray(p, dtype=float)
    if np.any(p_arr <= 0.0) or np.any(p_arr >= 1.0):
        raise ValueError("quantile argument must lie strictly inside (0, 1)")
    out = _sp.ndtri(p_arr)
    return float(out) if np.isscalar(p) or p_arr.ndim == 0 else out


def chisq_cdf(x, k):
    """ChiSq(k) distribution function via the regularized incomplete gamma."""
    if k <= 0:
        raise ValueError("degrees of freedom must be positive")
    x_arr = np.asarray(x, dtype=float)
    out = np.where(x_arr > 0.0, _sp.gammainc(k / 2.0, np.maximum(x_arr, 0.0) / 2.0), 0.0)
    return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def binom_cdf(j, n, p):
    """P(X <= j) for X ~ Bin(n, p), by direct summation of the pmf.

    j may be any integer (values below 0 give 0, at or above n give exactly 1).
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    j = int(j)
    if j < 0:
        return 0.0
    if j >= n:
        return 1.0
    q = 1.0 - p
    return math.fsum(math.comb(n, i) * p**i * q ** (n - i) for i in range(j + 1))
