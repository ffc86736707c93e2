"""Odd Jacobi theta function and Weierstrass functions for the lattice <1, tau>.

Conventions: ``theta1(z) = 2 sum_{n>=0} (-1)^n p^{(n+1/2)^2} sin((2n+1) pi z)``
with ``p = exp(i pi tau)``, so that ``theta1(z+1) = -theta1(z)`` and
``theta1(z+tau) = -exp(-i pi tau - 2 i pi z) theta1(z)``.

Logarithmic derivatives use the product expansion on the centred cell and
quasi-periodicity outside it.  ``wp`` is normalised as ``z**-2 + O(z**2)``.
"""

import cmath
import math

import numpy as np

from .errors import InvalidArgumentError

SERIES_TOL = 1e-18
POLE_RADIUS = 1e-6


class ThetaContext:
    """Truncation data for one lattice; immutable after construction."""

    def __init__(self, lattice):
        self.lattice = lattice
        tau = lattice.tau
        self.p = cmath.exp(1j * cmath.pi * tau)
        self.q = self.p * self.p
        logp = -math.pi * tau.imag          # log |p|
        # theta series: |p|^{(N+1/2)^2} < tol
        n = 1
        while logp * (n + 0.5) ** 2 > math.log(SERIES_TOL):
            n += 1
        self.n_series = n
        # product / Lambert series on the centred cell: |q|^{k-1/2} < tol
        logq = 2 * logp
        m = 1
        while logq * (m - 0.5) > math.log(SERIES_TOL):
            m += 1
        self.n_product = m
        k = np.arange(1, m + 1)
        self.qk = self.q ** k
        self._log_prefactor = (math.log(2.0) + 1j * math.pi * tau / 4
                               + np.sum(np.log1p(-self.qk)))
        # wp(z) = -(log theta1)''(z) + c0 with c0 = theta1'''(0) / (3 theta1'(0))
        self.c0 = -math.pi ** 2 / 3 + 8 * math.pi ** 2 * np.sum(self.qk / (1 - self.qk) ** 2)
        n_ser = np.arange(self.n_series + 1)
        self._ser_coef = 2 * (-1.0) ** n_ser * self.p ** ((n_ser + 0.5) ** 2)
        self._ser_freq = (2 * n_ser + 1) * math.pi

    def _cell(self, w):
        w = np.asarray(w, dtype=complex)
        w0, m, n = self.lattice.split(w)
        x = np.exp(2j * np.pi * w0)[..., None]
        y1 = self.qk * x
        y2 = self.qk / x
        return w0, m, n, y1, y2


def _ctx(ctx_or_lattice):
    return getattr(ctx_or_lattice, "theta", ctx_or_lattice)


def theta1(z, ctx):
    """Series value of theta1, with the argument first moved to the centred cell."""
    ctx = _ctx(ctx)
    z = np.asarray(z, dtype=complex)
    w0, m, n = ctx.lattice.split(z)
    s = np.sum(ctx._ser_coef * np.sin(ctx._ser_freq * w0[..., None]), axis=-1)
    tau = ctx.lattice.tau
    factor = (-1.0) ** (m + n) * np.exp(-1j * np.pi * n * n * tau - 2j * np.pi * n * w0)
    out = factor * s
    return complex(out) if out.ndim == 0 else out


def log_theta1(w, ctx):
    """A logarithm of theta1(w) (branch unspecified; exp() is what matters)."""
    ctx = _ctx(ctx)
    w0, m, n, y1, y2 = ctx._cell(w)
    tau = ctx.lattice.tau
    with np.errstate(divide="ignore"):
        out = (ctx._log_prefactor + np.log(np.sin(np.pi * w0))
               + np.sum(np.log1p(-y1) + np.log1p(-y2), axis=-1))
    out = out + 1j * np.pi * (m + n) - 1j * np.pi * n * n * tau - 2j * np.pi * n * w0
    return out


def dlog_theta1(w, ctx):
    """theta1'(w) / theta1(w)."""
    ctx = _ctx(ctx)
    w0, m, n, y1, y2 = ctx._cell(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.pi / np.tan(np.pi * w0)
    out = out + 2j * np.pi * np.sum(y2 / (1 - y2) - y1 / (1 - y1), axis=-1)
    return out - 2j * np.pi * n


def d2log_theta1(w, ctx):
    ctx = _ctx(ctx)
    w0, _, _, y1, y2 = ctx._cell(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -(np.pi / np.sin(np.pi * w0)) ** 2
    return out + 4 * np.pi ** 2 * np.sum(y1 / (1 - y1) ** 2 + y2 / (1 - y2) ** 2, axis=-1)


def d3log_theta1(w, ctx):
    ctx = _ctx(ctx)
    w0, _, _, y1, y2 = ctx._cell(w)
    s = np.sin(np.pi * w0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 2 * np.pi ** 3 * np.cos(np.pi * w0) / s ** 3
    series = y1 * (1 + y1) / (1 - y1) ** 3 - y2 * (1 + y2) / (1 - y2) ** 3
    return out + 8j * np.pi ** 3 * np.sum(series, axis=-1)


def _check_pole(z, ctx):
    if np.any(ctx.lattice.distance(z) < POLE_RADIUS):
        raise InvalidArgumentError("argument too close to a lattice point (pole of wp)")


def wp(z, ctx):
    """Weierstrass wp for <1, tau>, normalised as z**-2 + O(z**2)."""
    ctx = _ctx(ctx)
    _check_pole(z, ctx)
    out = ctx.c0 - d2log_theta1(z, ctx)
    return complex(out) if np.ndim(out) == 0 else out


def wp_prime(z, ctx):
    ctx = _ctx(ctx)
    _check_pole(z, ctx)
    out = -d3log_theta1(z, ctx)
    return complex(out) if np.ndim(out) == 0 else out


def half_period_values(ctx):
    """(e1, e2, e3) = wp at 1/2, tau/2, (1+tau)/2."""
    ctx = _ctx(ctx)
    tau = ctx.lattice.tau
    return tuple(wp(w, ctx) for w in (0.5, tau / 2, (1 + tau) / 2))


def wp_diff_divisor(alpha, beta):
    """Divisor of wp(z - alpha) - wp(z - beta): the halvings of alpha + beta
    minus 2[alpha] and 2[beta]."""
    from .efield import Divisor
    from .torus import halvings, points_equal

    if points_equal(alpha, beta):
        raise InvalidArgumentError("alpha and beta must be distinct points of E")
    zeros = [h.lift for h in halvings(alpha + beta)]
    poles = [alpha.lift, alpha.lift, beta.lift, beta.lift]
    return Divisor.from_lifts(zeros, poles, alpha.lattice)
