"""Points of the complex torus E = C / <1, tau>.

A :class:`TorusPoint` keeps the complex lift it was built from; reduced
coordinates ``(u, v)`` with ``lift = u + v*tau (mod lattice)`` are derived.
Lifts matter: divisor sums are balanced exactly on lifts, not modulo the
lattice.
"""

import cmath
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import config
from .errors import InvalidArgumentError

MIN_IM_TAU = 0.2
WARN_IM_TAU = 0.5


@dataclass(frozen=True)
class Lattice:
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if not (cmath.isfinite(tau)):
            raise InvalidArgumentError("tau must be finite")
        if tau.imag < MIN_IM_TAU:
            raise InvalidArgumentError(f"Im(tau) must be >= {MIN_IM_TAU}, got {tau.imag}")
        if tau.imag < WARN_IM_TAU:
            warnings.warn(f"Im(tau) = {tau.imag} < {WARN_IM_TAU}: q-series converge slowly",
                          stacklevel=2)
        object.__setattr__(self, "tau", tau)

    @cached_property
    def q(self):
        return cmath.exp(2j * cmath.pi * self.tau)

    @cached_property
    def theta(self):
        from .weierstrass import ThetaContext
        return ThetaContext(self)

    def coords(self, z):
        """Real coordinates (a, b) with z = a + b*tau, no reduction."""
        z = np.asarray(z, dtype=complex)
        b = z.imag / self.tau.imag
        a = z.real - b * self.tau.real
        return a, b

    def reduced_coords(self, z):
        a, b = self.coords(z)
        return _frac(a), _frac(b)

    def point(self, u, v):
        return u + v * self.tau

    def reduce(self, z):
        """Representative of z in the fundamental parallelogram [0,1) + [0,1)*tau."""
        u, v = self.reduced_coords(z)
        return u + v * self.tau

    def split(self, z):
        """Write z = w + m + n*tau with w in the centred cell; returns (w, m, n)."""
        z = np.asarray(z, dtype=complex)
        a, b = self.coords(z)
        n = np.round(b)
        m = np.round(a)
        return z - m - n * self.tau, m, n

    def lattice_part(self, z):
        """Nearest lattice vector to z and the residual."""
        w, m, n = self.split(z)
        return m + n * self.tau, w

    def distance(self, z1, z2=0.0):
        """Flat distance between z1 and z2 on the torus (vectorised)."""
        d = np.asarray(z1, dtype=complex) - np.asarray(z2, dtype=complex)
        w, _, _ = self.split(d)
        best = np.abs(w)
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                if i or j:
                    best = np.minimum(best, np.abs(w + i + j * self.tau))
        return best


def _frac(x):
    f = x - np.floor(x)
    return np.where(f >= 1.0, 0.0, f)


@dataclass(frozen=True)
class TorusPoint:
    lift: complex
    lattice: Lattice

    def __post_init__(self):
        object.__setattr__(self, "lift", complex(self.lift))

    @property
    def coords(self):
        u, v = self.lattice.reduced_coords(self.lift)
        return float(u), float(v)

    @property
    def reduced(self):
        u, v = self.coords
        return TorusPoint(self.lattice.point(u, v), self.lattice)

    def __add__(self, other):
        return TorusPoint(self.lift + _lift_of(other), self.lattice)

    def __sub__(self, other):
        return TorusPoint(self.lift - _lift_of(other), self.lattice)

    def __neg__(self):
        return TorusPoint(-self.lift, self.lattice)

    def __mul__(self, k):
        return TorusPoint(self.lift * k, self.lattice)

    __rmul__ = __mul__

    def __repr__(self):
        u, v = self.coords
        return f"TorusPoint(u={u:.12g}, v={v:.12g})"


def _lift_of(p):
    return p.lift if isinstance(p, TorusPoint) else complex(p)


def normalize(z, lattice):
    """Point of E represented by z; the lift is kept as given."""
    return TorusPoint(complex(z), lattice)


def points_equal(p, q, eps=None):
    eps = config.EPS if eps is None else eps
    return bool(p.lattice.distance(p.lift, q.lift) < eps)


def is_zero(p, eps=None):
    eps = config.EPS if eps is None else eps
    return bool(p.lattice.distance(p.lift) < eps)


def two_torsion(lattice):
    tau = lattice.tau
    return [TorusPoint(w, lattice) for w in (0.0, 0.5, tau / 2, (1 + tau) / 2)]


def halvings(p):
    """The four x with 2x = p; lifts are p.lift/2 plus half periods."""
    return [TorusPoint(p.lift / 2 + t.lift, p.lattice) for t in two_torsion(p.lattice)]


def third_point(p):
    """One solution rho of 3*rho = p, namely lift/3."""
    return TorusPoint(p.lift / 3, p.lattice)


def is_two_torsion(p, eps=None):
    eps = config.EPS if eps is None else eps
    return bool(p.lattice.distance(2 * p.lift) < eps)


def neg_canonical(p, eps=None):
    """Representative of {p, -p}: the lexicographically smaller by (u, v).

    Returns (point, sign); 2-torsion points map to themselves with sign +1.
    """
    if is_two_torsion(p, eps):
        return p.reduced, 1
    a = p.reduced
    b = (-p).reduced
    if a.coords <= b.coords:
        return a, 1
    return b, -1


def sort_key(z, lattice):
    u, v = lattice.reduced_coords(z)
    return (round(float(u), 12), round(float(v), 12))


__all__ = [
    "Lattice", "TorusPoint", "normalize", "points_equal", "is_zero", "two_torsion",
    "halvings", "third_point", "is_two_torsion", "neg_canonical", "sort_key",
]
