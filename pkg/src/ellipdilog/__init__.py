"""Elliptic dilogarithm, elliptic functions in divisor form, and degree
reduction certificates for elliptic Bloch relations."""

from .config import set_tolerances, tolerances
from .errors import BudgetExhausted, InvalidArgumentError, NonPrincipalDivisorError, NumericalFailure
from .dilog import bloch_wigner, five_term_residual_d, li2
from .torus import Lattice, TorusPoint, halvings, neg_canonical, normalize, points_equal, two_torsion
from .weierstrass import half_period_values, theta1, wp, wp_diff_divisor, wp_prime
from .efield import (
    Divisor, EllipticFunction, constant, div, evaluate, function_from_divisor, functions_equal,
    mul, one_minus, one_minus_reciprocal, random_function, reciprocal, scalar_mul, translate,
)
from .rootfind import count_zeros, fiber_residuals, solve_fiber
from .bloch import (
    FunctionSum, WedgePair, ZEMinusSum, beta, bloch_relation_residual, bloch_relation_value,
    delta_beta, edilog, edilog_sum, five_term_sum, five_term_terms,
)
from .reduction import (
    Budget, FiveTermInstance, GenericityWitness, ReductionCertificate, Rel3Instance,
    auxiliary_degree3, decompose_bloch_relation, find_mu, genericity_witness, h_function,
    interpolate_degree2, lemma_sp_auxiliary, reduce, verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "auxiliary_degree3", "beta", "bloch_relation_residual", "bloch_relation_value",
    "bloch_wigner", "Budget", "BudgetExhausted", "constant", "count_zeros",
    "decompose_bloch_relation", "delta_beta", "div", "Divisor", "edilog", "edilog_sum",
    "EllipticFunction", "evaluate", "fiber_residuals", "find_mu", "five_term_residual_d",
    "five_term_sum", "five_term_terms", "FiveTermInstance", "function_from_divisor",
    "functions_equal", "FunctionSum", "genericity_witness", "GenericityWitness", "h_function",
    "half_period_values", "halvings", "interpolate_degree2", "InvalidArgumentError", "Lattice",
    "lemma_sp_auxiliary", "li2", "mul", "neg_canonical", "NonPrincipalDivisorError",
    "normalize", "NumericalFailure", "one_minus", "one_minus_reciprocal", "points_equal",
    "random_function", "reciprocal", "reduce", "ReductionCertificate", "Rel3Instance",
    "scalar_mul", "set_tolerances", "solve_fiber", "theta1", "tolerances", "TorusPoint",
    "translate", "two_torsion", "verify_certificate", "WedgePair", "wp", "wp_diff_divisor",
    "wp_prime", "ZEMinusSum",
]
