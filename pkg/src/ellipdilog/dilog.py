"""Dilogarithm Li2 and the Bloch-Wigner function D on the complex plane.

Both functions accept a scalar or an array and are vectorised over numpy
arrays.  Li2 is evaluated on the principal branch (cut along [1, inf),
imaginary part ``-pi*log(x)`` on the cut itself).
"""

from fractions import Fraction
from math import factorial

import numpy as np

from .errors import InvalidArgumentError

PI2_6 = np.pi ** 2 / 6.0

_N_POWER = 56     # 0.5**56 / 56**2 < 1e-17
_N_BERNOULLI = 40


def _bernoulli(nmax):
    b = [Fraction(1)]
    for m in range(1, nmax + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * b[k]
            binom = binom * (m + 1 - k) // (k + 1)
        b.append(-acc / (m + 1))
    return b


# coefficients B_n / (n+1)! of Li2 as a power series in u = -log(1-z)
_BCOEF = np.array([float(bn / factorial(n + 1))
                   for n, bn in enumerate(_bernoulli(_N_BERNOULLI))])


def _as_complex_array(z):
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("non-finite argument")
    return arr


def _power_series(w):
    # sum_{k>=1} w^k / k^2, intended for |w| <= 1/2
    out = np.zeros_like(w)
    p = np.ones_like(w)
    for k in range(1, _N_POWER + 1):
        p = p * w
        out += p / (k * k)
    return out


def _bernoulli_series(w):
    u = -np.log1p(-w)
    out = np.zeros_like(w)
    p = np.ones_like(w)
    for c in _BCOEF:
        p = p * u
        if c != 0.0:
            out += c * p
    return out


def _li2_unit_disk(w):
    """Li2 for |w| <= 1."""
    out = np.empty_like(w)
    a = np.abs(w) <= 0.5
    b = ~a & (np.abs(1.0 - w) <= 0.5)
    c = ~a & ~b
    out[a] = _power_series(w[a])
    if np.any(b):
        wb = w[b]
        one = wb == 1.0
        wb_safe = np.where(one, 0.5, wb)
        val = PI2_6 - np.log(wb_safe) * np.log1p(-wb_safe) - _power_series(1.0 - wb_safe)
        out[b] = np.where(one, PI2_6, val)
    out[c] = _bernoulli_series(w[c])
    return out


def li2(z):
    """Principal-branch dilogarithm Li2(z) = sum z^k / k^2 (continued)."""
    arr = _as_complex_array(z)
    flat = arr.ravel()
    out = np.empty_like(flat)
    inv = np.abs(flat) > 1.0
    out[~inv] = _li2_unit_disk(flat[~inv])
    if np.any(inv):
        zi = flat[inv]
        lm = np.log(-zi)
        val = -_li2_unit_disk(1.0 / zi) - PI2_6 - 0.5 * lm * lm
        on_cut = zi.imag == 0.0
        if np.any(on_cut):
            x = zi.real[on_cut]
            val[on_cut] = val[on_cut].real - 1j * np.pi * np.log(x)
        out[inv] = val
    out = out.reshape(arr.shape)
    return complex(out) if out.ndim == 0 else out


def bloch_wigner(z):
    """D(z) = Im Li2(z) + arg(1 - z) log|z|, extended by 0 to z in {0, 1}.

    Arguments outside the unit disk are folded in with D(z) = -D(1/z).
    """
    arr = _as_complex_array(z)
    flat = arr.ravel()
    out = np.zeros(flat.shape, dtype=float)
    live = (flat.imag != 0.0)
    if np.any(live):
        w = flat[live]
        sign = np.where(np.abs(w) > 1.0, -1.0, 1.0)
        w = np.where(sign < 0, 1.0 / w, w)
        val = _li2_unit_disk(w).imag + np.angle(1.0 - w) * np.log(np.abs(w))
        out[live] = sign * val
    out = out.reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def five_term_residual_d(x, y):
    """|D(x) - D(y) + D(y/x) + D((1-x)/(1-y)) - D((1-1/x)/(1-1/y))| (vectorised)."""
    x, y = np.broadcast_arrays(_as_complex_array(x), _as_complex_array(y))
    if np.any((x == 0) | (x == 1) | (y == 0) | (y == 1) | (x == y)):
        raise InvalidArgumentError("five-term relation needs x, y not in {0, 1} and x != y")
    d = [bloch_wigner(t) for t in (x, y, y / x, (1 - x) / (1 - y), (1 - 1 / x) / (1 - 1 / y))]
    out = np.abs(d[0] - d[1] + d[2] + d[3] - d[4])
    return float(out) if np.ndim(out) == 0 else out
