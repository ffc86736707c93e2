"""Rational functions on E held as divisor data.

An :class:`EllipticFunction` is ``scale * prod theta1(z - a_i) / prod theta1(z - c_j)``
with zero lifts ``a_i`` and pole lifts ``c_j`` whose sums agree exactly in C.
Under that condition the theta quasi-periodicity factors cancel and the
quotient is doubly periodic.  All algebra is divisor arithmetic; scales are
re-fixed by evaluating the intended value at a probe point.
"""

import cmath
import math

import numpy as np

from . import config
from .errors import InvalidArgumentError, NonPrincipalDivisorError
from .torus import TorusPoint
from .weierstrass import dlog_theta1, log_theta1

VALUE_RTOL = 1e-8
PROBE_SEPARATION = 0.05

# Kronecker sequence used for probe points, in reduced coordinates
_GOLDEN = (np.sqrt(5) - 1) / 2
_PLASTIC = 0.7548776662466927
_PROBE_UV = np.array([((0.123 + k * _GOLDEN) % 1.0, (0.377 + k * _PLASTIC) % 1.0)
                      for k in range(1, 65)])


def _lifts(points):
    out = []
    for p in points:
        out.append(p.lift if isinstance(p, TorusPoint) else complex(p))
    return np.array(out, dtype=complex)


def _cluster(lifts, lattice, radius):
    """Greedy clustering of lifts on the torus; returns list of index lists."""
    n = len(lifts)
    if n == 0:
        return []
    dist = lattice.distance(lifts[:, None], lifts[None, :])
    used = np.zeros(n, dtype=bool)
    groups = []
    for i in range(n):
        if used[i]:
            continue
        members = np.nonzero(~used & (dist[i] < radius))[0]
        used[members] = True
        groups.append(list(members))
    return groups


class Divisor:
    """Formal Z-combination of points of E; coincident entries are merged."""

    def __init__(self, lifts, mults, lattice, eps=None):
        eps = config.EPS if eps is None else eps
        lifts = _lifts(lifts)
        mults = np.asarray(mults, dtype=int)
        if len(lifts) != len(mults):
            raise InvalidArgumentError("lifts and multiplicities differ in length")
        keep_l, keep_m = [], []
        for g in _cluster(lifts, lattice, eps):
            m = int(mults[g].sum())
            if m != 0:
                keep_l.append(lifts[g[0]])
                keep_m.append(m)
        order = sorted(range(len(keep_l)), key=lambda i: _uv(keep_l[i], lattice))
        self.lifts = np.array([keep_l[i] for i in order], dtype=complex)
        self.mults = np.array([keep_m[i] for i in order], dtype=int)
        self.lattice = lattice

    @classmethod
    def from_lifts(cls, zeros, poles, lattice):
        zeros, poles = _lifts(zeros), _lifts(poles)
        mults = np.concatenate([np.ones(len(zeros), int), -np.ones(len(poles), int)])
        return cls(np.concatenate([zeros, poles]), mults, lattice)

    @property
    def entries(self):
        return [(TorusPoint(z, self.lattice), int(m)) for z, m in zip(self.lifts, self.mults)]

    @property
    def degree(self):
        return int(self.mults[self.mults > 0].sum())

    def zeros(self):
        return np.repeat(self.lifts[self.mults > 0], self.mults[self.mults > 0])

    def poles(self):
        return np.repeat(self.lifts[self.mults < 0], -self.mults[self.mults < 0])

    def point_sum(self):
        return complex(np.sum(self.lifts * self.mults))

    def __add__(self, other):
        return Divisor(np.concatenate([self.lifts, other.lifts]),
                       np.concatenate([self.mults, other.mults]), self.lattice)

    def __neg__(self):
        return Divisor(self.lifts, -self.mults, self.lattice)

    def __sub__(self, other):
        return self + (-other)

    def __len__(self):
        return len(self.lifts)

    def matches(self, other, eps=None):
        """Equality as formal sums, points compared modulo the lattice."""
        eps = config.EPS if eps is None else eps
        diff = Divisor(np.concatenate([self.lifts, other.lifts]),
                       np.concatenate([self.mults, -other.mults]), self.lattice, eps)
        return len(diff) == 0

    def __repr__(self):
        parts = []
        for p, m in self.entries:
            u, v = p.coords
            parts.append(f"{m:+d}[{u:.6f},{v:.6f}]")
        return "Divisor(" + " ".join(parts) + ")"


def _uv(z, lattice):
    u, v = lattice.reduced_coords(z)
    return (round(float(u), 10), round(float(v), 10))


def _multiset_match(a, b, lattice, eps):
    """Match two lift multisets modulo the lattice; True iff a bijection exists."""
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    dist = lattice.distance(a[:, None], b[None, :])
    free = np.ones(len(b), dtype=bool)
    for i in range(len(a)):
        cand = np.nonzero(free & (dist[i] < eps))[0]
        if len(cand) == 0:
            return False
        free[cand[np.argmin(dist[i, cand])]] = False
    return True


class EllipticFunction:
    """scale * prod theta1(z - zeros) / prod theta1(z - poles), sums balanced."""

    def __init__(self, lattice, zeros, poles, scale):
        self.lattice = lattice
        self.zeros = np.asarray(zeros, dtype=complex).ravel()
        self.poles = np.asarray(poles, dtype=complex).ravel()
        self.scale = complex(scale)
        if len(self.zeros) != len(self.poles):
            raise InvalidArgumentError("a function needs as many zeros as poles")
        if self.scale == 0 or not cmath.isfinite(self.scale):
            raise InvalidArgumentError("scale must be finite and nonzero")
        self._one_minus = None
        self._probe = None

    # -- basic data -------------------------------------------------------
    @property
    def degree(self):
        return len(self.zeros)

    @property
    def is_constant(self):
        return self.degree == 0

    def divisor(self):
        return Divisor.from_lifts(self.zeros, self.poles, self.lattice)

    @property
    def support(self):
        return np.concatenate([self.zeros, self.poles])

    def probe(self, avoid=()):
        """Deterministic evaluation point away from the support (and ``avoid``)."""
        if not len(avoid) and self._probe is not None:
            return self._probe
        pts = np.concatenate([self.support, np.asarray(avoid, dtype=complex)])
        z = _choose_probe(pts, self.lattice)
        if not len(avoid):
            self._probe = z
        return z

    # -- evaluation --------------------------------------------------------
    def _log_parts(self, z):
        """(log numerator, log denominator) at an array of points."""
        z = np.asarray(z, dtype=complex)
        ctx = self.lattice.theta
        a = np.full(z.shape, cmath.log(self.scale), dtype=complex)
        b = np.zeros(z.shape, dtype=complex)
        if self.degree:
            with np.errstate(divide="ignore", invalid="ignore"):
                a = a + np.sum(log_theta1(z[..., None] - self.zeros, ctx), axis=-1)
                b = b + np.sum(log_theta1(z[..., None] - self.poles, ctx), axis=-1)
        return a, b

    def _dlog_parts(self, z):
        z = np.asarray(z, dtype=complex)
        ctx = self.lattice.theta
        if not self.degree:
            zero = np.zeros(z.shape, dtype=complex)
            return zero, zero
        with np.errstate(divide="ignore", invalid="ignore"):
            la = np.sum(dlog_theta1(z[..., None] - self.zeros, ctx), axis=-1)
            lg = np.sum(dlog_theta1(z[..., None] - self.poles, ctx), axis=-1)
        return la, lg

    def __call__(self, z):
        return evaluate(self, z)

    def log_derivative(self, z):
        la, lg = self._dlog_parts(z)
        return la - lg

    # -- algebra sugar -------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, EllipticFunction):
            return mul(self, other)
        return scalar_mul(other, self)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, EllipticFunction):
            return div(self, other)
        return scalar_mul(1.0 / complex(other), self)

    def __repr__(self):
        if self.is_constant:
            return f"EllipticFunction(constant={self.scale:.6g})"
        return f"EllipticFunction(degree={self.degree}, scale={self.scale:.6g})"


def _choose_probe(points, lattice):
    cand = _PROBE_UV[:, 0] + _PROBE_UV[:, 1] * lattice.tau
    if len(points) == 0:
        return complex(cand[0])
    sep = np.min(lattice.distance(cand[:, None], np.asarray(points)[None, :]), axis=1)
    good = np.nonzero(sep > PROBE_SEPARATION)[0]
    return complex(cand[good[0]] if len(good) else cand[np.argmax(sep)])


def constant(lattice, c):
    return EllipticFunction(lattice, [], [], c)


def _balance(zeros, poles, lattice, tol=None, adjust="pole"):
    """Make sum(zeros) == sum(poles) exactly by moving one lift by the lattice
    vector (plus round-off) separating them."""
    tol = config.EPS if tol is None else tol
    zeros = np.array(zeros, dtype=complex)
    poles = np.array(poles, dtype=complex)
    if len(zeros) == 0 and len(poles) == 0:
        return zeros, poles
    d = complex(np.sum(zeros) - np.sum(poles))
    _, resid = lattice.lattice_part(d)
    if abs(complex(resid)) > tol:
        raise NonPrincipalDivisorError(
            f"zero and pole sums differ by a non-lattice amount (residual {abs(complex(resid)):.3g})")
    if adjust == "pole":
        poles[-1] += d
    else:
        zeros[-1] -= d
    return zeros, poles


def _cancel(zeros, poles, lattice, eps=None):
    """Remove zero/pole pairs that coincide on E."""
    eps = config.EPS if eps is None else eps
    zeros = list(np.asarray(zeros, dtype=complex))
    poles = list(np.asarray(poles, dtype=complex))
    if not zeros or not poles:
        return np.array(zeros, dtype=complex), np.array(poles, dtype=complex)
    dist = lattice.distance(np.array(zeros)[:, None], np.array(poles)[None, :])
    zkeep = np.ones(len(zeros), dtype=bool)
    pkeep = np.ones(len(poles), dtype=bool)
    for i in range(len(zeros)):
        cand = np.nonzero(pkeep & (dist[i] < eps))[0]
        if len(cand):
            j = cand[np.argmin(dist[i, cand])]
            zkeep[i] = False
            pkeep[j] = False
    return np.array(zeros)[zkeep], np.array(poles)[pkeep]


def function_from_divisor(zeros, poles, lattice, scale=None, probe=None, value=None):
    """Function with the given zero and pole lifts.

    The last pole lift absorbs any lattice vector between the two sums.  Give
    either ``scale`` or a ``(probe, value)`` pair fixing f(probe) = value.
    """
    zeros, poles = _lifts(zeros), _lifts(poles)
    if len(zeros) != len(poles):
        raise InvalidArgumentError("mismatched zero and pole counts")
    zeros, poles = _cancel(zeros, poles, lattice)
    zeros, poles = _balance(zeros, poles, lattice)
    if scale is not None:
        return EllipticFunction(lattice, zeros, poles, scale)
    if probe is None or value is None:
        raise InvalidArgumentError("need a scale or a (probe, value) normalisation")
    unit = EllipticFunction(lattice, zeros, poles, 1.0)
    if len(unit.support) and np.min(lattice.distance(probe, unit.support)) < 10 * config.EPS:
        raise InvalidArgumentError("probe point lies on the divisor support")
    return EllipticFunction(lattice, zeros, poles, complex(value) / evaluate(unit, probe))


def _rebuild(zeros, poles, lattice, value_at, avoid=(), adjust="pole"):
    """Reduce lifts, cancel, balance, and fix the scale by ``value_at(probe)``."""
    zeros, poles = _cancel(zeros, poles, lattice)
    zeros = lattice.reduce(zeros) if len(zeros) else zeros
    poles = lattice.reduce(poles) if len(poles) else poles
    zeros, poles = _balance(zeros, poles, lattice, adjust=adjust)
    avoid = np.asarray(avoid, dtype=complex)
    f = EllipticFunction(lattice, zeros, poles, 1.0)
    z0 = f.probe(avoid)
    f.scale = complex(value_at(z0)) / evaluate(f, z0)
    return f


def evaluate(f, z):
    """f(z); returns complex infinity within eps of a pole."""
    z_arr = np.asarray(z, dtype=complex)
    if f.is_constant:
        out = np.full(z_arr.shape, f.scale, dtype=complex)
    else:
        a, b = f._log_parts(z_arr)
        with np.errstate(over="ignore", invalid="ignore"):
            out = np.exp(a - b)
        near_pole = np.min(f.lattice.distance(z_arr[..., None], f.poles), axis=-1) < config.EPS
        out = np.where(near_pole | ~np.isfinite(out), complex(math.inf, 0), out)
    return complex(out) if out.ndim == 0 else out


def degree(f):
    return f.degree


def scalar_mul(c, f):
    c = complex(c)
    if c == 0:
        raise InvalidArgumentError("the zero function is not allowed")
    return EllipticFunction(f.lattice, f.zeros, f.poles, c * f.scale)


def reciprocal(f):
    return EllipticFunction(f.lattice, f.poles, f.zeros, 1.0 / f.scale)


def mul(f, g):
    if f.is_constant:
        return scalar_mul(f.scale, g)
    if g.is_constant:
        return scalar_mul(g.scale, f)
    zeros = np.concatenate([f.zeros, g.zeros])
    poles = np.concatenate([f.poles, g.poles])
    avoid = np.concatenate([f.support, g.support])
    return _rebuild(zeros, poles, f.lattice, lambda z: evaluate(f, z) * evaluate(g, z), avoid)


def div(f, g):
    return mul(f, reciprocal(g))


def translate(f, rho):
    """z -> f(z + rho)."""
    r = rho.lift if isinstance(rho, TorusPoint) else complex(rho)
    if f.is_constant:
        return f
    return _rebuild(f.zeros - r, f.poles - r, f.lattice, lambda z: evaluate(f, z + r),
                    np.concatenate([f.support - r]))


def one_minus(f):
    """1 - f with its zero set found by solving f = 1 on E (cached on f)."""
    from .rootfind import solve_fiber

    if f._one_minus is not None:
        return f._one_minus
    if f.is_constant:
        if f.scale == 1:
            raise InvalidArgumentError("1 - f is the zero function")
        g = constant(f.lattice, 1 - f.scale)
    else:
        fiber = solve_fiber(f, 1.0)
        zeros = fiber.zeros()
        zeros, poles = _balance(zeros, f.poles, f.lattice, adjust="zero")
        g = EllipticFunction(f.lattice, zeros, poles, 1.0)
        z0 = g.probe()
        g.scale = (1 - evaluate(f, z0)) / evaluate(g, z0)
    f._one_minus = g
    if g._one_minus is None:
        g._one_minus = f
    return g


def one_minus_reciprocal(f):
    """1 - 1/f = -(1 - f)/f, from the already known pieces."""
    if f.is_constant:
        return constant(f.lattice, 1 - 1 / f.scale)
    return scalar_mul(-1.0, div(one_minus(f), f))


def _log_size(f, grid=48):
    """Mean of log|f| over the period cell (midpoint rule)."""
    t = (np.arange(grid) + 0.37) / grid
    z = (t[:, None] + t[None, :] * f.lattice.tau).ravel()
    a, b = f._log_parts(z)
    vals = (a - b).real
    return float(np.mean(vals[np.isfinite(vals)]))


def random_function(lattice, n, seed, separation=0.02, max_tries=1000):
    """Degree-n function with uniform random divisor and a random phase.

    The modulus of the scale is chosen so that log|f| has mean zero over the
    torus, which makes the size of f independent of the lifts chosen.
    """
    if n < 2:
        raise InvalidArgumentError("degree must be at least 2")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        uv = rng.random((2 * n - 1, 2))
        pts = uv[:, 0] + uv[:, 1] * lattice.tau
        zeros, poles = pts[:n], pts[n:]
        last = np.sum(zeros) - np.sum(poles)
        poles = np.append(poles, last)
        supp = np.concatenate([lattice.reduce(zeros), lattice.reduce(poles)])
        dist = lattice.distance(supp[:, None], supp[None, :])
        np.fill_diagonal(dist, np.inf)
        if np.min(dist) > separation:
            phase = cmath.exp(2j * math.pi * rng.random())
            f = EllipticFunction(lattice, zeros, poles, 1.0)
            f.scale = phase * math.exp(-_log_size(f))
            return f
    raise InvalidArgumentError("could not draw a well-separated divisor")


def functions_equal(f, g, eps=None):
    """Same divisor modulo the lattice and the same value at a probe."""
    eps = config.EPS if eps is None else eps
    if f.degree != g.degree:
        return False
    if f.is_constant:
        return abs(f.scale - g.scale) <= VALUE_RTOL * max(abs(f.scale), abs(g.scale))
    if not (_multiset_match(f.zeros, g.zeros, f.lattice, eps)
            and _multiset_match(f.poles, g.poles, f.lattice, eps)):
        return False
    z0 = f.probe(g.support)
    a, b = evaluate(f, z0), evaluate(g, z0)
    return abs(a - b) <= VALUE_RTOL * max(abs(a), abs(b))


def is_constant_value(f, c):
    return f.is_constant and abs(f.scale - c) <= VALUE_RTOL * max(1.0, abs(c))
