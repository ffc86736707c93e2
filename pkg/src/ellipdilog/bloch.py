"""Formal side of the elliptic Bloch relations.

* :class:`ZEMinusSum` -- elements of Z[E]^-, i.e. formal sums of points of E
  modulo [xi] + [-xi].  Classes of 2-torsion points have order two.
* :func:`beta` -- f ^ g  ->  sum n_i m_j [x_i - y_j] over the two divisors.
* :func:`delta_beta` -- [f] -> beta(f ^ (1 - f)).
* :func:`edilog` -- the elliptic dilogarithm sum_n D(exp(2 pi i (xi + n tau))).
* :class:`FunctionSum` and :func:`five_term_sum` for Z[K \\ {0, 1}].
"""

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .dilog import bloch_wigner
from .efield import (
    EllipticFunction, div, functions_equal, is_constant_value, mul, one_minus,
    one_minus_reciprocal, evaluate, VALUE_RTOL,
)
from .errors import InvalidArgumentError
from .torus import TorusPoint, neg_canonical

EDILOG_TOL = 1e-15


class ZEMinusSum:
    """Element of Z[E]^- in canonical form.

    Each class {xi, -xi} is stored once, keyed by its neg_canonical
    representative; coefficients on 2-torsion classes live in {0, 1}.
    """

    def __init__(self, lattice, eps=None):
        self.lattice = lattice
        self.eps = config.EPS if eps is None else eps
        self._keys = np.zeros(0, dtype=complex)
        self._coef = []
        self._tors = []

    def add(self, point, coeff=1):
        lift = point.lift if isinstance(point, TorusPoint) else complex(point)
        coeff = int(coeff)
        if coeff == 0:
            return self
        lat = self.lattice
        if len(self._keys):
            dp = lat.distance(self._keys, lift)
            i = int(np.argmin(dp))
            if dp[i] < self.eps:
                self._bump(i, coeff)
                return self
            dm = lat.distance(self._keys, -lift)
            i = int(np.argmin(dm))
            if dm[i] < self.eps:
                self._bump(i, -coeff)
                return self
        key, sign = neg_canonical(TorusPoint(lift, lat), self.eps)
        tors = bool(lat.distance(2 * key.lift) < self.eps)
        self._keys = np.append(self._keys, key.lift)
        self._coef.append(coeff % 2 if tors else sign * coeff)
        self._tors.append(tors)
        return self

    def _bump(self, i, c):
        if self._tors[i]:
            self._coef[i] = (self._coef[i] + c) % 2
        else:
            self._coef[i] += c

    def add_many(self, lifts, coeffs):
        for z, c in zip(np.ravel(lifts), np.ravel(coeffs)):
            self.add(complex(z), int(c))
        return self

    def terms(self):
        """[(TorusPoint, coefficient)] with zero coefficients dropped, sorted."""
        out = [(TorusPoint(k, self.lattice), c)
               for k, c in zip(self._keys, self._coef) if c != 0]
        out.sort(key=lambda t: t[0].coords)
        return out

    def is_zero(self):
        return all(c == 0 for c in self._coef)

    def __len__(self):
        return sum(1 for c in self._coef if c != 0)

    def copy(self):
        out = ZEMinusSum(self.lattice, self.eps)
        out._keys = self._keys.copy()
        out._coef = list(self._coef)
        out._tors = list(self._tors)
        return out

    def __iadd__(self, other):
        for p, c in other.terms():
            self.add(p, c)
        return self

    def __add__(self, other):
        out = self.copy()
        out += other
        return out

    def scaled(self, k):
        out = ZEMinusSum(self.lattice, self.eps)
        for p, c in self.terms():
            out.add(p, k * c)
        return out

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        body = " ".join(f"{c:+d}[{p.coords[0]:.6f},{p.coords[1]:.6f}]" for p, c in self.terms())
        return f"ZEMinusSum({body or '0'})"


@dataclass(frozen=True)
class WedgePair:
    left: EllipticFunction
    right: EllipticFunction


def beta(w, out=None, coeff=1):
    """beta(f ^ g) = sum_{i,j} n_i m_j [x_i - y_j]  (accumulated into ``out``)."""
    f, g = w.left, w.right
    out = ZEMinusSum(f.lattice) if out is None else out
    if f.is_constant or g.is_constant:
        return out
    df, dg = f.divisor(), g.divisor()
    diffs = df.lifts[:, None] - dg.lifts[None, :]
    mults = df.mults[:, None] * dg.mults[None, :] * coeff
    out.add_many(diffs, mults)
    return out


def delta_beta(f, out=None, coeff=1):
    """beta(f ^ (1 - f)); accepts an EllipticFunction or a FunctionSum."""
    if isinstance(f, FunctionSum):
        lattice = f.lattice
        out = ZEMinusSum(lattice) if out is None else out
        for c, g in f.terms:
            delta_beta(g, out, coeff * c)
        return out
    out = ZEMinusSum(f.lattice) if out is None else out
    if f.is_constant:
        return out
    return beta(WedgePair(f, one_minus(f)), out, coeff)


def _edilog_nterms(lattice):
    aq = abs(lattice.q)
    n = 1
    while aq ** n * (1 + 2 * math.pi * n * lattice.tau.imag) >= EDILOG_TOL:
        n += 1
    return n


def edilog(xi, lattice=None):
    """D_tau(xi) = D(x) + sum_{n>=1} [D(x q^n) - D(x^-1 q^n)], x = exp(2 pi i xi).

    ``xi`` may be a TorusPoint or an array of lifts (then pass ``lattice``).
    """
    if isinstance(xi, TorusPoint):
        lattice = xi.lattice
        lifts = np.array(xi.lift)
    else:
        lifts = np.asarray(xi, dtype=complex)
    if lattice is None:
        raise InvalidArgumentError("a lattice is needed for raw lifts")
    w = lattice.reduce(lifts)
    x = np.exp(2j * np.pi * w)
    n = np.arange(1, _edilog_nterms(lattice) + 1)
    qn = lattice.q ** n
    xs = x[..., None]
    out = bloch_wigner(x) + np.sum(bloch_wigner(xs * qn) - bloch_wigner(qn / xs), axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def edilog_sum(s):
    """The extended dilogarithm on Z[E]^-: sum of coefficient * D_tau(key)."""
    terms = s.terms()
    if not terms:
        return 0.0
    lifts = np.array([p.lift for p, _ in terms])
    coefs = np.array([c for _, c in terms], dtype=float)
    return float(np.sum(coefs * edilog(lifts, s.lattice)))


def bloch_triple_sum(alpha, beta_, gamma, lattice):
    """sum_{i,j} D(a_i - b_j) + D(b_i - c_j) + D(c_i - a_j) over expanded lifts."""
    a, b, c = (np.asarray(v, dtype=complex) for v in (alpha, beta_, gamma))
    diffs = np.concatenate([(a[:, None] - b[None, :]).ravel(),
                            (b[:, None] - c[None, :]).ravel(),
                            (c[:, None] - a[None, :]).ravel()])
    if not len(diffs):
        return 0.0
    return float(np.sum(edilog(diffs, lattice)))


def bloch_relation_value(f):
    """Signed left-hand side of the elliptic Bloch relation for f."""
    if f.is_constant:
        raise InvalidArgumentError("the Bloch relation needs a non-constant function")
    g = one_minus(f)
    return bloch_triple_sum(f.zeros, g.zeros, f.poles, f.lattice)


def bloch_relation_residual(f):
    return abs(bloch_relation_value(f))


class FunctionSum:
    """Element of Z[K \\ {0, 1}]: integer combination of functions, collected
    under :func:`functions_equal`."""

    def __init__(self, lattice, terms=()):
        self.lattice = lattice
        self.terms = []
        for c, f in terms:
            self.add(f, c)

    def add(self, f, coeff=1):
        coeff = int(coeff)
        if is_constant_value(f, 0.0) or is_constant_value(f, 1.0):
            raise InvalidArgumentError("0 and 1 are not generators")
        if coeff == 0:
            return self
        for t in self.terms:
            if functions_equal(t[1], f):
                t[0] += coeff
                break
        else:
            self.terms.append([coeff, f])
        self.terms = [t for t in self.terms if t[0] != 0]
        return self

    def extend(self, other, coeff=1):
        for c, f in other.terms:
            self.add(f, coeff * c)
        return self

    def is_zero(self):
        return not self.terms

    def __iter__(self):
        return iter((c, f) for c, f in self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "FunctionSum(" + ", ".join(f"{c:+d}*{f!r}" for c, f in self.terms) + ")"


def _attach_one_minus(t, candidate):
    """Cache 1 - t if ``candidate`` agrees with it; otherwise leave it to the root finder."""
    if t.is_constant or candidate.degree != t.degree:
        return
    z0 = t.probe(candidate.support)
    want = 1 - evaluate(t, z0)
    got = evaluate(candidate, z0)
    if abs(got - want) <= VALUE_RTOL * max(abs(want), 1e-300):
        t._one_minus = candidate
        if candidate._one_minus is None:
            candidate._one_minus = t


def five_term_terms(x, y):
    """[(sign, function)] for [x] - [y] + [y/x] + [(1-x)/(1-y)] - [(1-1/x)/(1-1/y)].

    Divisors of 1 - term are shared: with W = 1 - y/x one has
    1 - (1-x)/(1-y) = x W / (1-y) and 1 - (1-1/x)/(1-1/y) = W / (1-y).
    """
    for h in (x, y):
        if is_constant_value(h, 0.0) or is_constant_value(h, 1.0):
            raise InvalidArgumentError("five-term arguments must avoid the constants 0 and 1")
    if functions_equal(x, y):
        raise InvalidArgumentError("five-term arguments must differ")
    om_x, om_y = one_minus(x), one_minus(y)
    t3 = div(y, x)
    t4 = div(om_x, om_y)
    t5 = div(one_minus_reciprocal(x), one_minus_reciprocal(y))
    if not t3.is_constant:
        w = one_minus(t3)
        if not t4.is_constant:
            _attach_one_minus(t4, div(mul(x, w), om_y))
        if not t5.is_constant:
            _attach_one_minus(t5, div(w, om_y))
    return [(1, x), (-1, y), (1, t3), (1, t4), (-1, t5)]


def five_term_sum(x, y):
    out = FunctionSum(x.lattice)
    for sign, t in five_term_terms(x, y):
        out.add(t, sign)
    return out
