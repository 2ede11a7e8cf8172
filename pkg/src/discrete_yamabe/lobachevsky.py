"""Milnor's Lobachevsky function ``L(x) = -int_0^x log|2 sin t| dt``.

After reducing ``x`` modulo pi into ``[-pi/2, pi/2]`` the function is
evaluated from the Bernoulli-number expansion of the Clausen function,

    L(x) = x (1 - log|2x|) + x * sum_k zeta(2k) / (k (2k+1)) * (x/pi)^(2k),

whose ratio is at most 1/4 on the reduced range, so a fixed number of
terms gives full double precision.
"""

import numpy as np
from scipy.special import zeta

from .errors import NonFinite

__all__ = ["lobachevsky"]

_N_TERMS = 26
_k = np.arange(1, _N_TERMS + 1, dtype=float)
# Highest power first, for Horner evaluation in (x/pi)^2.
_COEFFS = (zeta(2.0 * _k) / (_k * (2.0 * _k + 1.0)))[::-1]


def _reduced(r):
    q = (r / np.pi) ** 2
    series = np.zeros_like(r)
    for c in _COEFFS:
        series = series * q + c
    series *= q
    absr = np.abs(r)
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(absr > 0, r * (1.0 - np.log(2.0 * absr)), 0.0)
    return head + r * series


def lobachevsky(x):
    """Evaluate the Lobachevsky function; odd and pi-periodic.

    Accepts a scalar or an array and returns the same shape.  Absolute
    error is below 1e-14 on the reduced range.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFinite("Lobachevsky function needs finite arguments")
    r = arr - np.pi * np.round(arr / np.pi)
    out = _reduced(np.atleast_1d(r))
    if np.ndim(x) == 0:
        return float(out[0])
    return out.reshape(arr.shape)
