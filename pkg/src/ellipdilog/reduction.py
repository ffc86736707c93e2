"""Degree reduction in the pre-Bloch group of an elliptic function field.

Given f, :func:`reduce` writes [f] as a sum of generators of degree <= 3
plus an explicit list of five-term relations, returned as a
:class:`ReductionCertificate` that :func:`verify_certificate` re-checks from
scratch.  The building blocks are

* :func:`genericity_witness` -- six marked divisor points with the four
  separation conditions that make the degree-3 construction possible;
* :func:`h_function` / :func:`find_mu` / :func:`interpolate_degree2` -- a
  degree-2 function with four prescribed values, via the cross ratio of
  four translates of wp;
* :func:`auxiliary_degree3` -- g with g(beta1) = g(beta2) = 1 whose divisor
  shares two zeros and two poles with f;
* :func:`lemma_sp_auxiliary` -- the degree-2 replacement when two of the
  pair sums coincide.
"""

import cmath
import math
from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from . import config
from .bloch import (
    FunctionSum, ZEMinusSum, bloch_relation_value, bloch_triple_sum, delta_beta,
    edilog_sum, five_term_terms,
)
from .efield import (
    EllipticFunction, constant, evaluate, function_from_divisor,
    mul, one_minus, translate, _multiset_match,
)
from .errors import BudgetExhausted, InvalidArgumentError, NumericalFailure
from .rootfind import solve_fiber
from .torus import TorusPoint, halvings, third_point
from .weierstrass import wp

VALUE_RTOL = 1e-8
MU_RESIDUAL = 1e-10


# -- data types -------------------------------------------------------------

@dataclass(frozen=True)
class GenericityWitness:
    alpha1: TorusPoint
    alpha2: TorusPoint
    beta1: TorusPoint
    beta2: TorusPoint
    gamma1: TorusPoint
    gamma2: TorusPoint

    @property
    def lattice(self):
        return self.alpha1.lattice


@dataclass(frozen=True)
class FiveTermInstance:
    x: EllipticFunction
    y: EllipticFunction
    sign: int


@dataclass
class ReductionCertificate:
    target: EllipticFunction
    steps: list
    terminals: FunctionSum

    @property
    def lattice(self):
        return self.target.lattice


@dataclass(frozen=True)
class Rel3Instance:
    alpha: tuple
    beta: tuple
    gamma: tuple
    coefficient: int

    def value(self):
        """The nine-term sum of elliptic dilogarithms for this configuration."""
        lat = self.alpha[0].lattice
        return bloch_triple_sum([p.lift for p in self.alpha], [p.lift for p in self.beta],
                                [p.lift for p in self.gamma], lat)


@dataclass
class Budget:
    max_depth: int = 12
    max_retries: int = 8
    max_degree: int = 8
    seed: int = 0


@dataclass
class VerificationReport:
    formal: bool
    zeminus: bool
    analytic_value: float
    analytic: bool
    messages: list = field(default_factory=list)

    @property
    def passed(self):
        return self.formal and self.zeminus and self.analytic


@dataclass
class DecompositionReport:
    bloch_value: float
    rel3_value: float
    difference: float
    formal: bool
    low_degree_zero: bool

    @property
    def passed(self):
        return self.formal and self.low_degree_zero and self.difference < config.TOL_ANALYTIC


# -- small helpers ----------------------------------------------------------

def _same(lattice, z1, z2, eps=None):
    eps = config.EPS if eps is None else eps
    return lattice.distance(z1, z2) < eps


def _is_inf(v):
    return cmath.isinf(complex(v))


def _values_close(got, want, rtol=VALUE_RTOL):
    """Relative check for finite nonzero targets, chordal for 0 and infinity."""
    got, want = complex(got), complex(want)
    if _is_inf(want) or want == 0:
        if _is_inf(got):
            return _is_inf(want)
        if _is_inf(want):
            return 1.0 / max(abs(got), 1e-300) <= rtol
        return abs(got) <= rtol
    if _is_inf(got):
        return False
    return abs(got - want) <= rtol * abs(want)


def _triples(f):
    """(zeros, 1-fiber, poles) of f as lift arrays with multiplicities expanded."""
    return f.zeros, one_minus(f).zeros, f.poles


# -- genericity -------------------------------------------------------------

def _sorted_lifts(lifts, lattice):
    lifts = np.asarray(lifts, dtype=complex)
    u, v = lattice.reduced_coords(lifts)
    order = np.lexsort((np.round(v, 12), np.round(u, 12)))
    return lifts[order]


def _pair_tables(f):
    lat = f.lattice
    alpha, beta, gamma = (_sorted_lifts(x, lat) for x in _triples(f))
    a_pairs = list(combinations(range(len(alpha)), 2))
    b_pairs = [(i, j) for i, j in combinations(range(len(beta)), 2)
               if not _same(lat, beta[i], beta[j])]
    c_pairs = list(permutations(range(len(gamma)), 2))
    return alpha, beta, gamma, a_pairs, b_pairs, c_pairs


def _pair_sums(points, pairs):
    if not pairs:
        return np.zeros(0, dtype=complex)
    idx = np.array(pairs)
    return points[idx[:, 0]] + points[idx[:, 1]]


def genericity_witness(f):
    """First choice of marked points satisfying all four separation conditions,
    or None.  Search order is lexicographic over sorted point lists."""
    if f.degree < 3:
        raise InvalidArgumentError("genericity is only defined for degree >= 3")
    lat = f.lattice
    alpha, beta, gamma, a_pairs, b_pairs, c_pairs = _pair_tables(f)
    if not (a_pairs and b_pairs and c_pairs):
        return None
    eps = config.EPS
    sa = _pair_sums(alpha, a_pairs)[:, None, None]
    sb = _pair_sums(beta, b_pairs)[None, :, None]
    sc = _pair_sums(gamma, c_pairs)[None, None, :]
    bidx = np.array(b_pairs)
    cidx = np.array(c_pairs)
    b1 = beta[bidx[:, 0]][None, :, None]
    b2 = beta[bidx[:, 1]][None, :, None]
    g1 = gamma[cidx[:, 0]][None, None, :]
    ok = ((lat.distance(sa, sb) >= eps) & (lat.distance(sb, sc) >= eps)
          & (lat.distance(sa, sc) >= eps)
          & (lat.distance(sa - g1 - b1) >= eps) & (lat.distance(sa - g1 - b2) >= eps))
    hits = np.argwhere(ok)
    if not len(hits):
        return None
    i, j, k = hits[0]
    (a1, a2), (bb1, bb2), (c1, c2) = a_pairs[i], b_pairs[j], c_pairs[k]
    return GenericityWitness(*(TorusPoint(z, lat) for z in (
        alpha[a1], alpha[a2], beta[bb1], beta[bb2], gamma[c1], gamma[c2])))


def check_witness(f, w, eps=None):
    """Direct re-evaluation of the four conditions for a proposed witness.

    Returns a dict condition -> bool.
    """
    eps = config.EPS if eps is None else eps
    lat = f.lattice
    alpha, beta, gamma = _triples(f)

    def mult(points, p):
        return int(np.sum(lat.distance(points, p.lift) < eps))

    def member(points, p):
        return mult(points, p) >= 1

    a1, a2, b1, b2, c1, c2 = w.alpha1, w.alpha2, w.beta1, w.beta2, w.gamma1, w.gamma2
    sa, sb, sc = a1.lift + a2.lift, b1.lift + b2.lift, c1.lift + c2.lift
    membership = (member(alpha, a1) and member(alpha, a2) and member(beta, b1)
                  and member(beta, b2) and member(gamma, c1) and member(gamma, c2))
    c1_ok = membership
    if _same(lat, a1.lift, a2.lift, eps):
        c1_ok = c1_ok and mult(alpha, a1) >= 2
    if _same(lat, c1.lift, c2.lift, eps):
        c1_ok = c1_ok and mult(gamma, c1) >= 2
    return {
        1: bool(c1_ok),
        2: bool(not _same(lat, b1.lift, b2.lift, eps)),
        3: bool(not _same(lat, sa, sb, eps) and not _same(lat, sb, sc, eps)
                and not _same(lat, sa, sc, eps)),
        4: bool(lat.distance(sa - c1.lift - b1.lift) >= eps
                and lat.distance(sa - c1.lift - b2.lift) >= eps),
    }


def partial_choice(f):
    """Marked points meeting conditions 1-2 but with coinciding pair sums.

    Returns (case, GenericityWitness) with case one of "alpha=beta",
    "beta=gamma", "alpha=gamma", or None.
    """
    lat = f.lattice
    alpha, beta, gamma, a_pairs, b_pairs, c_pairs = _pair_tables(f)
    if not (a_pairs and b_pairs and c_pairs):
        return None
    eps = config.EPS
    sa = _pair_sums(alpha, a_pairs)[:, None, None]
    sb = _pair_sums(beta, b_pairs)[None, :, None]
    sc = _pair_sums(gamma, c_pairs)[None, None, :]
    shape = (len(a_pairs), len(b_pairs), len(c_pairs))
    tests = [
        ("alpha=beta", np.broadcast_to(lat.distance(sa, sb) < eps, shape)),
        ("beta=gamma", np.broadcast_to(lat.distance(sb, sc) < eps, shape)),
        ("alpha=gamma", np.broadcast_to(lat.distance(sa, sc) < eps, shape)),
    ]
    best = None
    for case, mask in tests:
        hits = np.argwhere(mask)
        if len(hits) and (best is None or tuple(hits[0]) < best[1]):
            best = (case, tuple(hits[0]))
    if best is None:
        return None
    case, (i, j, k) = best
    (a1, a2), (bb1, bb2), (c1, c2) = a_pairs[i], b_pairs[j], c_pairs[k]
    w = GenericityWitness(*(TorusPoint(z, lat) for z in (
        alpha[a1], alpha[a2], beta[bb1], beta[bb2], gamma[c1], gamma[c2])))
    return case, w


# -- the h function and degree-2 interpolation ------------------------------

def _wp_cross_ratio(a, b, c, d):
    return (a - c) * (b - d) / ((b - c) * (a - d))


def h_direct(alpha, beta, gamma, delta, z):
    """Cross ratio of wp(z - alpha), wp(z - beta), wp(z - gamma), wp(z - delta)."""
    lat = alpha.lattice
    z = np.asarray(z, dtype=complex)
    vals = [wp(z - p.lift, lat) for p in (alpha, beta, gamma, delta)]
    return _wp_cross_ratio(*vals)


def h_function(alpha, beta, gamma, delta):
    """Degree-8 function [wp(z-alpha), wp(z-beta), wp(z-gamma), wp(z-delta)] in divisor form.

    Zeros are the halvings of alpha+gamma and beta+delta, poles the halvings
    of alpha+delta and beta+gamma.
    """
    lat = alpha.lattice
    pts = [alpha, beta, gamma, delta]
    for p, q in combinations(pts, 2):
        if _same(lat, p.lift, q.lift):
            raise InvalidArgumentError("h needs four mutually different points")
    zeros = [h.lift for h in halvings(alpha + gamma) + halvings(beta + delta)]
    poles = [h.lift for h in halvings(alpha + delta) + halvings(beta + gamma)]
    unit = function_from_divisor(zeros, poles, lat, scale=1.0)
    avoid = np.array([p.lift for p in pts])
    z0 = unit.probe(avoid)
    return EllipticFunction(lat, unit.zeros, unit.poles,
                            complex(h_direct(alpha, beta, gamma, delta, z0)) / evaluate(unit, z0))


def _mu_ok(mu, alpha, beta, gamma, delta, eps):
    lat = alpha.lattice
    if _same(lat, mu, alpha.lift, eps) or _same(lat, mu, beta.lift, eps):
        return False
    a, b, c, d = alpha.lift, beta.lift, gamma.lift, delta.lift
    for s in (a + c, b + d, a + d, b + c, a + b, d + c):
        if _same(lat, 2 * mu, s, eps):
            return False
    return True


def mu_candidates(alpha, beta, gamma, delta, m, h=None):
    """All points of h^{-1}(m) passing the three conditions, in fiber order."""
    m = complex(m)
    if m in (0, 1) or _is_inf(m):
        raise InvalidArgumentError("m must avoid 0, 1 and infinity")
    h = h_function(alpha, beta, gamma, delta) if h is None else h
    fiber = solve_fiber(h, m)
    eps = config.EPS
    out = []
    for z in fiber.lifts:
        if abs(evaluate(h, z) - m) > MU_RESIDUAL * max(1.0, abs(m)):
            continue
        if _mu_ok(z, alpha, beta, gamma, delta, eps):
            out.append(TorusPoint(z, alpha.lattice))
    return out


def find_mu(alpha, beta, gamma, delta, m):
    """A point mu with h(mu) = m, mu not in {alpha, beta}, and 2 mu off the six pair sums."""
    cands = mu_candidates(alpha, beta, gamma, delta, m)
    if not cands:
        raise NumericalFailure("no admissible mu in the fiber of h")
    return cands[0]


def _mobius_to_standard(z1, z2, z3):
    """Matrix of the Moebius map sending z1, z2, z3 to 0, inf, 1."""
    if _is_inf(z1):
        return np.array([[0, z3 - z2], [1, -z2]], dtype=complex)
    if _is_inf(z2):
        return np.array([[1, -z1], [0, z3 - z1]], dtype=complex)
    if _is_inf(z3):
        return np.array([[1, -z1], [1, -z2]], dtype=complex)
    return np.array([[z3 - z2, -z1 * (z3 - z2)], [z3 - z1, -z2 * (z3 - z1)]], dtype=complex)


def _apply(mat, w):
    (a, b), (c, d) = mat
    if _is_inf(w):
        num, den = a, c
    else:
        w = complex(w)
        num, den = a * w + b, c * w + d
    if den == 0:
        return complex(math.inf, 0)
    return complex(num / den)


def _fiber_lifts(f_base, w, known, two_mu):
    """Two points where the degree-2 base function equals w (known pairs first)."""
    for value, p in known:
        if (_is_inf(w) and _is_inf(value)) or (not _is_inf(w) and not _is_inf(value)
                                               and abs(complex(w) - value) <= 1e-14 * max(1.0, abs(value))):
            return [p, two_mu - p]
    fib = solve_fiber(f_base, w)
    lifts = list(np.repeat(fib.lifts, fib.mults))
    return lifts


def interpolate_degree2(alpha, beta, gamma, delta, a, b, c, d):
    """Degree-2 function taking the values a, b, c, d (inf allowed) at alpha, beta, gamma, delta."""
    lat = alpha.lattice
    pts = [alpha, beta, gamma, delta]
    for p, q in combinations(pts, 2):
        if _same(lat, p.lift, q.lift):
            raise InvalidArgumentError("interpolation points must be mutually different")
    vals = [complex(v) for v in (a, b, c, d)]
    for u, v in combinations(vals, 2):
        if (_is_inf(u) and _is_inf(v)) or (not _is_inf(u) and not _is_inf(v) and u == v):
            raise InvalidArgumentError("interpolation values must be mutually different")
    a, b, c, d = vals
    # std: a -> 0, b -> inf, d -> 1; its inverse is the map applied after the base function
    std = _mobius_to_standard(a, b, d)
    m = _apply(std, c)
    h = h_function(alpha, beta, gamma, delta)
    cands = mu_candidates(alpha, beta, gamma, delta, m, h)
    if not cands:
        raise NumericalFailure("no admissible mu in the fiber of h")
    inv = np.array([[std[1, 1], -std[0, 1]], [-std[1, 0], std[0, 0]]])
    last = None
    for mu in cands:
        two_mu = 2 * mu.lift
        base = function_from_divisor([alpha.lift, two_mu - alpha.lift],
                                     [beta.lift, two_mu - beta.lift], lat,
                                     probe=delta.lift, value=1.0)
        known = [(0j, alpha.lift), (complex(math.inf, 0), beta.lift), (1 + 0j, delta.lift),
                 (m, gamma.lift)]
        zeros = _fiber_lifts(base, _apply(std, 0), known, two_mu)
        poles = _fiber_lifts(base, _apply(std, math.inf), known, two_mu)
        unit = function_from_divisor(zeros, poles, lat, scale=1.0)
        z0 = unit.probe(np.concatenate([base.support, [p.lift for p in pts]]))
        out = EllipticFunction(lat, unit.zeros, unit.poles,
                               _apply(inv, evaluate(base, z0)) / evaluate(unit, z0))
        got = [evaluate(out, p.lift) for p in pts]
        if out.degree == 2 and all(_values_close(g, v) for g, v in zip(got, vals)):
            return out
        last = got
    raise NumericalFailure(f"degree-2 interpolation missed its values: {last}")


# -- auxiliary functions for the reduction step -----------------------------

def corollary_case(g, w):
    """1, 2 or 3 according to which divisor shape g has relative to the witness, else 0."""
    lat = g.lattice
    eps = config.EPS
    a = np.array([w.alpha1.lift, w.alpha2.lift])
    c = np.array([w.gamma1.lift, w.gamma2.lift])

    def contains(points, sub):
        points = list(points)
        for s in sub:
            d = [lat.distance(p, s) for p in points]
            if not d or min(d) >= eps:
                return False
            points.pop(int(np.argmin(d)))
        return True

    if g.degree == 3 and contains(g.zeros, a) and contains(g.poles, c):
        return 1
    if g.degree == 2:
        if _multiset_match(g.zeros, a, lat, eps) and (contains(g.poles, c[:1]) or contains(g.poles, c[1:])):
            return 2
        if _multiset_match(g.poles, c, lat, eps) and (contains(g.zeros, a[:1]) or contains(g.zeros, a[1:])):
            return 3
    return 0


def auxiliary_degree3(w):
    """g with g(beta1) = g(beta2) = 1 whose zeros contain alpha1, alpha2 and
    poles contain gamma1 (and gamma2 unless a degeneration occurs)."""
    lat = w.lattice
    a1, a2, b1, b2, c1, c2 = (p.lift for p in (w.alpha1, w.alpha2, w.beta1, w.beta2,
                                                w.gamma1, w.gamma2))
    p = a1 + a2 - c1
    g1 = function_from_divisor([a1, a2], [c1, p], lat, probe=b1, value=1.0)
    v = evaluate(g1, b2)
    if v == 0 or _is_inf(v) or abs(v - 1) < VALUE_RTOL:
        raise InvalidArgumentError("witness violates the separation conditions")
    g2 = interpolate_degree2(TorusPoint(p, lat), w.gamma2, w.beta1, w.beta2,
                             0.0, complex(math.inf, 0), 1.0, 1.0 / v)
    g = mul(g1, g2)
    for z in (b1, b2):
        if not _values_close(evaluate(g, z), 1.0):
            raise NumericalFailure("auxiliary function misses the value 1 at a marked point")
    if corollary_case(g, w) == 0:
        raise NumericalFailure("auxiliary function has an unexpected divisor shape")
    return g


def lemma_sp_auxiliary(f, choice):
    """Degree-2 h for the coinciding-sum case ``choice = (case, points)``.

    h vanishes at alpha1, has a pole at gamma1, and takes the value 1 at beta1;
    which other marked points it hits depends on the case.
    """
    case, w = choice
    lat = f.lattice
    a1, a2, b1, b2, c1, c2 = (p.lift for p in (w.alpha1, w.alpha2, w.beta1, w.beta2,
                                                w.gamma1, w.gamma2))
    if case == "alpha=beta":
        zeros, poles = [a1, a2], [c1, a1 + a2 - c1]
        expect = [(a1, 0.0), (a2, 0.0), (b1, 1.0), (b2, 1.0), (c1, math.inf)]
    elif case == "beta=gamma":
        zeros, poles = [a1, c1 + c2 - a1], [c1, c2]
        expect = [(a1, 0.0), (b1, 1.0), (b2, 1.0), (c1, math.inf), (c2, math.inf)]
    elif case == "alpha=gamma":
        zeros, poles = [a1, a2], [c1, c2]
        expect = [(a1, 0.0), (a2, 0.0), (b1, 1.0), (c1, math.inf), (c2, math.inf)]
    else:
        raise InvalidArgumentError(f"unknown case {case!r}")
    h = function_from_divisor(zeros, poles, lat, probe=b1, value=1.0)
    if h.degree != 2:
        raise NumericalFailure("lemma auxiliary function degenerated")
    for z, want in expect:
        if not _values_close(evaluate(h, z), want):
            raise NumericalFailure(f"lemma auxiliary function misses {want} at a marked point")
    return h


def auxiliary_for(f):
    """(kind, g): "generic" via the degree-3 construction, "lemma" via the
    coinciding-sum construction, or (None, None).  Cached on f."""
    cached = getattr(f, "_auxiliary", None)
    if cached is not None:
        return cached
    w = genericity_witness(f)
    if w is not None:
        out = ("generic", auxiliary_degree3(w))
    else:
        choice = partial_choice(f)
        out = ("lemma", lemma_sp_auxiliary(f, choice)) if choice is not None else (None, None)
    f._auxiliary = out
    return out


# -- reduction --------------------------------------------------------------

def _check_step(x, y, terms):
    acc = ZEMinusSum(x.lattice)
    for s, t in terms:
        delta_beta(t, acc, s)
    if not acc.is_zero():
        raise NumericalFailure("a five-term instance has nonzero image in Z[E]^-")


def _random_constant(rng):
    while True:
        a = complex(*rng.normal(size=2))
        if abs(a) > 0.2 and abs(a - 1) > 0.2:
            return a


class _Reducer:
    def __init__(self, budget):
        self.budget = budget
        self.rng = np.random.default_rng(budget.seed)
        self.steps = []
        self.terminals = None

    def run(self, f):
        self.terminals = FunctionSum(f.lattice)
        self._reduce(f, 1, 0, frozenset())
        return ReductionCertificate(f, self.steps, self.terminals)

    def _reduce(self, f, coeff, depth, detoured):
        if f.degree <= 3:
            self.terminals.add(f, coeff)
            return
        if depth > self.budget.max_depth:
            raise BudgetExhausted("reduction recursion too deep")
        n = f.degree
        kind, g = auxiliary_for(f)
        if g is not None:
            terms = five_term_terms(g, f)
            for _, t in terms[2:]:
                if t.degree > n - 1:
                    raise NumericalFailure(f"{kind} step did not lower the degree below {n}")
            _check_step(g, f, terms)
            self.steps.append(FiveTermInstance(g, f, -coeff))
            self._emit(terms, coeff, depth, detoured)
            return
        if n in detoured:
            raise BudgetExhausted(f"constant detour needed twice at degree {n}")
        for _ in range(self.budget.max_retries):
            a = constant(f.lattice, _random_constant(self.rng))
            try:
                terms = five_term_terms(a, f)
                if any(t.degree > n or auxiliary_for(t)[1] is None for _, t in terms[2:]):
                    continue
                _check_step(a, f, terms)
            except NumericalFailure:
                continue
            self.steps.append(FiveTermInstance(a, f, -coeff))
            self._emit(terms, coeff, depth, detoured | {n})
            return
        raise BudgetExhausted("no usable constant found for the detour")

    def _emit(self, terms, coeff, depth, detoured):
        # [y] = [x] + [y/x] + [(1-x)/(1-y)] - [(1-1/x)/(1-1/y)] - five(x, y)
        self.terminals.add(terms[0][1], coeff)
        for s, t in terms[2:]:
            self._reduce(t, coeff * s, depth + 1, detoured)


def reduce(f, budget=None):
    """Certificate writing [f] as degree <= 3 generators plus five-term relations."""
    budget = Budget() if budget is None else budget
    if f.is_constant and abs(f.scale - 1) <= VALUE_RTOL:
        raise InvalidArgumentError("1 is not a generator")
    if f.degree > budget.max_degree:
        raise InvalidArgumentError(f"degree {f.degree} exceeds the budget ({budget.max_degree})")
    return _Reducer(budget).run(f)


def verify_certificate(cert, tol_analytic=None):
    """Re-check a certificate from its data alone."""
    tol = config.TOL_ANALYTIC if tol_analytic is None else tol_analytic
    lat = cert.lattice
    msgs = []
    grand = FunctionSum(lat)
    acc = ZEMinusSum(lat)
    try:
        grand.add(cert.target, 1)
        delta_beta(cert.target, acc, 1)
        for k, g in cert.terminals:
            if g.degree > 3:
                msgs.append(f"terminal of degree {g.degree}")
            grand.add(g, -k)
            delta_beta(g, acc, -k)
        for step in cert.steps:
            if step.sign not in (1, -1):
                msgs.append(f"step sign {step.sign} is not +-1")
            for s, t in five_term_terms(step.x, step.y):
                grand.add(t, -step.sign * s)
                delta_beta(t, acc, -step.sign * s)
    except (InvalidArgumentError, NumericalFailure) as exc:
        msgs.append(f"certificate could not be expanded: {exc}")
        return VerificationReport(False, False, math.inf, False, msgs)
    formal = grand.is_zero() and not msgs
    if not grand.is_zero():
        msgs.append(f"{len(grand)} generator(s) left after collecting")
    zero = acc.is_zero()
    if not zero:
        msgs.append(f"{len(acc)} point class(es) left in Z[E]^-")
    value = edilog_sum(acc)
    return VerificationReport(formal, zero, value, abs(value) < tol, msgs)


def decompose_bloch_relation(f, budget=None, certificate=None):
    """Write the Bloch relation of f through nine-point configurations.

    Returns (list of Rel3Instance, DecompositionReport).  An existing
    certificate for f may be passed to skip the reduction.
    """
    cert = reduce(f, budget) if certificate is None else certificate
    lat = f.lattice
    out = []
    acc = delta_beta(f) if not f.is_constant else ZEMinusSum(lat)
    low_ok = True
    for k, g in cert.terminals:
        if g.is_constant:
            continue
        if g.degree <= 2:
            if not delta_beta(g).is_zero():
                low_ok = False
            continue
        acc = acc - delta_beta(g).scaled(k)
        # centred representative of the zero sum, so zero-sum inputs are left in place
        _, centred = lat.lattice_part(complex(np.sum(g.zeros)))
        rho = third_point(TorusPoint(complex(centred), lat))
        shifted = translate(g, rho)
        beta = one_minus(g).zeros - rho.lift
        out.append(Rel3Instance(
            alpha=tuple(TorusPoint(z, lat) for z in shifted.zeros),
            beta=tuple(TorusPoint(z, lat) for z in lat.reduce(beta)),
            gamma=tuple(TorusPoint(z, lat) for z in shifted.poles),
            coefficient=int(k),
        ))
    value = bloch_relation_value(f) if not f.is_constant else 0.0
    rel3 = float(sum(r.coefficient * r.value() for r in out))
    report = DecompositionReport(value, rel3, abs(value - rel3), acc.is_zero(), low_ok)
    return out, report
