import math

import numpy as np
import pytest

from ellipdilog import (
    Budget, BudgetExhausted, FiveTermInstance, FunctionSum, GenericityWitness, InvalidArgumentError,
    Lattice, ReductionCertificate, TorusPoint, auxiliary_degree3, constant, count_zeros,
    decompose_bloch_relation, delta_beta, evaluate, find_mu, five_term_terms,
    function_from_divisor, functions_equal, genericity_witness, h_function, interpolate_degree2,
    lemma_sp_auxiliary, mul, one_minus, random_function, reciprocal, reduce, scalar_mul,
    solve_fiber, translate, two_torsion, verify_certificate,
)
from ellipdilog import reduction
from ellipdilog.efield import _multiset_match
from ellipdilog.reduction import check_witness, corollary_case, h_direct, mu_candidates, partial_choice
from ellipdilog.torus import third_point

LAT = Lattice(0.15 + 1.1j)
T = LAT.tau


def P(z):
    return TorusPoint(z, LAT)


def four_points(seed):
    rng = np.random.default_rng(seed)
    while True:
        z = rng.random(4) + rng.random(4) * T
        d = LAT.distance(z[:, None], z[None, :])
        np.fill_diagonal(d, 1)
        if d.min() > 0.05:
            return [P(w) for w in z]


def rel(got, want):
    return abs(got - want) / abs(want)


# -- genericity ----------------------------------------------------------------

@pytest.mark.parametrize("seed", range(4))
def test_random_degree_four_has_witness(seed):
    f = random_function(LAT, 4, seed=seed)
    w = genericity_witness(f)
    assert w is not None
    assert check_witness(f, w) == {1: True, 2: True, 3: True, 4: True}


def test_witness_needs_degree_three():
    with pytest.raises(InvalidArgumentError):
        genericity_witness(random_function(LAT, 2, seed=1))


def single_one_point(n):
    """f = 1 - phi with phi vanishing to order n at one point: the 1-fiber is
    a single point, so no choice of two distinct beta points exists."""
    z0 = 0.37 + 0.52 * T
    poles = [0.1 + 0.2 * T, 0.6 + 0.7 * T, 0.85 + 0.15 * T][: n - 1]
    poles.append(n * z0 - sum(poles))
    phi = function_from_divisor([z0] * n, poles, LAT, scale=0.7 + 0.2j)
    return one_minus(phi)


def test_witness_absent_when_one_fiber_is_a_single_point():
    f = single_one_point(4)
    assert np.sum(one_minus(f).divisor().mults > 0) == 1
    assert genericity_witness(f) is None
    assert partial_choice(f) is None


# -- coinciding pair sums --------------------------------------------------------

A1, A2, C1, B1 = 0.12 + 0.31 * T, 0.58 + 0.22 * T, 0.33 + 0.71 * T, 0.81 + 0.55 * T


def alpha_beta_function():
    """Degree-6 f with zeros a1, a2 and value 1 at b1, b2 where b1 + b2 = a1 + a2."""
    h = function_from_divisor([A1, A2], [C1, A1 + A2 - C1], LAT, probe=B1, value=1.0)
    v = random_function(LAT, 2, seed=3)
    f = mul(h, one_minus(scalar_mul(-1, mul(one_minus(h), v))))
    return f, A1 + A2 - B1


def test_lemma_alpha_beta():
    f, b2 = alpha_beta_function()
    assert abs(evaluate(f, b2) - 1) < 1e-9
    w = GenericityWitness(P(A1), P(A2), P(B1), P(b2), P(C1), P(A1 + A2 - C1))
    h = lemma_sp_auxiliary(f, ("alpha=beta", w))
    assert h.degree == 2
    for z, want in ((A1, 0), (A2, 0), (B1, 1), (b2, 1)):
        assert abs(evaluate(h, z) - want) < 1e-9
    assert np.isinf(evaluate(h, C1))
    s = np.sum(one_minus(h).zeros)
    assert LAT.distance(s, A1 + A2) < 1e-9
    for _, t in five_term_terms(h, f)[2:]:
        assert t.degree <= f.degree - 1


def test_lemma_beta_gamma_via_reciprocal():
    f, b2 = alpha_beta_function()
    g = reciprocal(f)
    case, w = partial_choice(g)
    assert case == "beta=gamma"
    h = lemma_sp_auxiliary(g, (case, w))
    assert abs(evaluate(h, w.beta1.lift) - 1) < 1e-9
    assert abs(evaluate(h, w.beta2.lift) - 1) < 1e-9
    assert abs(evaluate(h, w.alpha1.lift)) < 1e-9
    for _, t in five_term_terms(h, g)[2:]:
        assert t.degree <= g.degree - 1


def alpha_gamma_function():
    c1, c2 = 0.44 + 0.15 * T, A1 + A2 - (0.44 + 0.15 * T)
    k = function_from_divisor([A1, A2], [c1, c2], LAT, scale=1.0)
    return mul(k, random_function(LAT, 2, seed=8))


def test_lemma_alpha_gamma():
    f = alpha_gamma_function()
    case, w = partial_choice(f)
    assert case == "alpha=gamma"
    h = lemma_sp_auxiliary(f, (case, w))
    assert abs(evaluate(h, w.beta1.lift) - 1) < 1e-9
    assert np.isinf(evaluate(h, w.gamma2.lift))
    for _, t in five_term_terms(h, f)[2:]:
        assert t.degree <= f.degree - 1


def test_lemma_rejects_unknown_case():
    f = alpha_gamma_function()
    _, w = partial_choice(f)
    with pytest.raises(InvalidArgumentError):
        lemma_sp_auxiliary(f, ("nonsense", w))


def test_reduce_through_lemma_branch(monkeypatch):
    monkeypatch.setattr(reduction, "genericity_witness", lambda f: None)
    f = alpha_gamma_function()
    cert = reduce(f)
    assert cert.steps
    assert verify_certificate(cert).passed


# -- the h function -------------------------------------------------------------

@pytest.mark.parametrize("seed", range(3))
def test_h_degree_and_divisor_form(seed):
    a, b, c, d = four_points(seed)
    h = h_function(a, b, c, d)
    assert h.degree == 8
    assert count_zeros(h, 0.3 + 0.4j) == 8
    z = np.array([0.21 + 0.33 * T, 0.77 + 0.12 * T, 0.45 + 0.91 * T])
    direct = h_direct(a, b, c, d, z)
    assert np.max(np.abs(evaluate(h, z) / direct - 1)) < 1e-8


@pytest.mark.parametrize("seed", range(3))
def test_h_is_invariant_under_two_torsion(seed):
    a, b, c, d = four_points(10 + seed)
    h = h_function(a, b, c, d)
    z = np.array([0.21 + 0.33 * T, 0.6 + 0.5 * T])
    base = evaluate(h, z)
    for t in two_torsion(LAT):
        assert np.max(np.abs(evaluate(h, z + t.lift) / base - 1)) < 1e-8


@pytest.mark.parametrize("seed", range(3))
def test_one_minus_h_swaps_middle_points(seed):
    a, b, c, d = four_points(20 + seed)
    assert functions_equal(one_minus(h_function(a, b, c, d)), h_function(a, c, b, d))


def test_h_rejects_coincident_points():
    a, b, c, _ = four_points(0)
    with pytest.raises(InvalidArgumentError):
        h_function(a, b, c, a)


@pytest.mark.parametrize("seed", range(3))
def test_find_mu_conditions(seed):
    a, b, c, d = four_points(30 + seed)
    m = 0.4 - 1.3j
    h = h_function(a, b, c, d)
    assert solve_fiber(h, m).degree == 8
    mu = find_mu(a, b, c, d, m)
    assert abs(evaluate(h, mu.lift) - m) < 1e-10 * abs(m)
    assert LAT.distance(mu.lift, a.lift) > 1e-8 and LAT.distance(mu.lift, b.lift) > 1e-8
    for s in (a + c, b + d, a + d, b + c, a + b, d + c):
        assert LAT.distance(2 * mu.lift, s.lift) > 1e-8
    for t in two_torsion(LAT):
        assert abs(evaluate(h, mu.lift + t.lift) - m) < 1e-9 * abs(m)
    cands = mu_candidates(a, b, c, d, m, h)
    assert len(cands) >= 4


def test_find_mu_rejects_special_values():
    a, b, c, d = four_points(0)
    for m in (0, 1, math.inf):
        with pytest.raises(InvalidArgumentError):
            find_mu(a, b, c, d, m)


# -- degree-2 interpolation ------------------------------------------------------

@pytest.mark.parametrize("seed", range(4))
def test_interpolation_hits_four_values(seed):
    pts = four_points(40 + seed)
    rng = np.random.default_rng(seed)
    vals = list(rng.normal(size=4) + 1j * rng.normal(size=4))
    f = interpolate_degree2(*pts, *vals)
    assert f.degree == 2
    for p, v in zip(pts, vals):
        assert rel(evaluate(f, p.lift), v) < 1e-8


def test_interpolation_with_zero_and_infinity():
    a, b, c, d = four_points(50)
    v = 2.5 - 0.7j
    f = interpolate_degree2(a, b, c, d, 0, math.inf, 1, v)
    assert any(LAT.distance(z, a.lift) < 1e-8 for z in f.zeros)
    assert any(LAT.distance(z, b.lift) < 1e-8 for z in f.poles)
    assert rel(evaluate(f, c.lift), 1) < 1e-8
    assert rel(evaluate(f, d.lift), v) < 1e-8


def test_interpolation_ratio_is_the_h_value():
    a, b, c, d = four_points(60)
    m = -0.6 + 0.9j
    f = interpolate_degree2(a, b, c, d, 0, math.inf, m, 1)
    assert rel(evaluate(f, c.lift) / evaluate(f, d.lift), m) < 1e-9


def test_interpolation_rejects_repeated_data():
    a, b, c, d = four_points(70)
    with pytest.raises(InvalidArgumentError):
        interpolate_degree2(a, b, c, d, 1, 2, 3, 1)
    with pytest.raises(InvalidArgumentError):
        interpolate_degree2(a, a, c, d, 1, 2, 3, 4)


# -- the degree-3 auxiliary function ---------------------------------------------

@pytest.mark.parametrize("seed", range(4))
def test_auxiliary_degree3_generic_case(seed):
    f = random_function(LAT, 4 + seed % 2, seed=80 + seed)
    w = genericity_witness(f)
    g = auxiliary_degree3(w)
    assert rel(evaluate(g, w.beta1.lift), 1) < 1e-8
    assert rel(evaluate(g, w.beta2.lift), 1) < 1e-8
    assert corollary_case(g, w) == 1
    assert g.degree == 3
    for _, t in five_term_terms(g, f)[2:]:
        assert t.degree <= f.degree - 1


def test_corollary_case_recognises_degenerate_shapes():
    a1, a2, c1, c2 = A1, A2, C1, 0.7 + 0.8 * T
    w = GenericityWitness(P(a1), P(a2), P(0.1 + 0.1 * T), P(0.2 + 0.9 * T), P(c1), P(c2))
    case2 = function_from_divisor([a1, a2], [c1, a1 + a2 - c1], LAT, scale=1.0)
    case3 = function_from_divisor([a1, c1 + c2 - a1], [c1, c2], LAT, scale=1.0)
    assert corollary_case(case2, w) == 2
    assert corollary_case(case3, w) == 3
    assert corollary_case(random_function(LAT, 3, seed=5), w) == 0


# -- reduction certificates -----------------------------------------------------

def test_reduce_low_degree_is_terminal():
    for n in (2, 3):
        f = random_function(LAT, n, seed=n)
        cert = reduce(f)
        assert cert.steps == []
        assert len(cert.terminals) == 1 and cert.terminals.terms[0][0] == 1
        assert verify_certificate(cert).passed


@pytest.mark.parametrize("seed", range(3))
def test_reduce_degree_four(seed):
    f = random_function(LAT, 4, seed=90 + seed)
    cert = reduce(f)
    assert cert.steps
    assert all(g.degree <= 3 for _, g in cert.terminals)
    rep = verify_certificate(cert)
    assert rep.formal and rep.zeminus and rep.analytic, rep.messages


def test_reduce_without_any_witness_uses_a_constant():
    f = single_one_point(4)
    cert = reduce(f)
    assert any(s.x.is_constant for s in cert.steps)
    assert verify_certificate(cert).passed


def test_reduce_is_deterministic():
    f = random_function(LAT, 4, seed=91)
    c1, c2 = reduce(f, Budget(seed=3)), reduce(f, Budget(seed=3))
    assert len(c1.steps) == len(c2.steps)
    assert all(functions_equal(s.x, t.x) for s, t in zip(c1.steps, c2.steps))


def test_tampered_certificate_fails():
    f = random_function(LAT, 4, seed=92)
    cert = reduce(f)
    steps = list(cert.steps)
    s = steps[0]
    steps[0] = FiveTermInstance(s.x, s.y, -s.sign)
    bad = ReductionCertificate(cert.target, steps, cert.terminals)
    rep = verify_certificate(bad)
    assert not rep.formal and not rep.passed


def test_wrong_terminals_fail():
    f = random_function(LAT, 4, seed=93)
    cert = reduce(f)
    terms = FunctionSum(LAT)
    terms.extend(cert.terminals)
    terms.add(random_function(LAT, 3, seed=1), 1)
    rep = verify_certificate(ReductionCertificate(f, cert.steps, terms))
    assert not rep.formal


def test_reduce_rejects_out_of_budget_inputs():
    with pytest.raises(InvalidArgumentError):
        reduce(random_function(LAT, 5, seed=1), Budget(max_degree=4))
    with pytest.raises(InvalidArgumentError):
        reduce(constant(LAT, 1.0))


def test_budget_exhaustion_surfaces(monkeypatch):
    monkeypatch.setattr(reduction, "genericity_witness", lambda f: None)
    monkeypatch.setattr(reduction, "partial_choice", lambda f: None)
    with pytest.raises(BudgetExhausted):
        reduce(random_function(LAT, 4, seed=2))


# -- decomposition into nine-point configurations ---------------------------------

def test_decompose_degree_two_is_empty():
    f = random_function(LAT, 2, seed=4)
    rels, rep = decompose_bloch_relation(f)
    assert rels == []
    assert abs(rep.bloch_value) < 1e-9 and rep.passed


def test_decompose_zero_sum_degree_three_is_itself():
    g = random_function(LAT, 3, seed=6)
    f = translate(g, third_point(TorusPoint(complex(np.sum(g.zeros)), LAT)))
    assert LAT.distance(np.sum(f.zeros)) < 1e-12
    rels, rep = decompose_bloch_relation(f)
    assert len(rels) == 1 and rels[0].coefficient == 1
    r = rels[0]
    assert _multiset_match([p.lift for p in r.alpha], f.zeros, LAT, 1e-8)
    assert _multiset_match([p.lift for p in r.gamma], f.poles, LAT, 1e-8)
    assert _multiset_match([p.lift for p in r.beta], one_minus(f).zeros, LAT, 1e-8)
    assert abs(r.value() - rep.bloch_value) < 1e-12
    assert rep.passed


def test_decompose_degree_five():
    f = random_function(LAT, 5, seed=7)
    rels, rep = decompose_bloch_relation(f)
    assert rels
    assert rep.formal and rep.low_degree_zero
    assert rep.difference < 1e-6
    total = delta_beta(f)
    for r in rels:
        assert LAT.distance(sum(p.lift for p in r.alpha)) < 1e-9
    assert not total.is_zero()
