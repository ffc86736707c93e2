"""Command-line front end.

Exit codes: 0 pass, 2 input error, 3 numerical failure, 4 verification failure.
"""

import argparse
import sys

import numpy as np

from . import config
from .bloch import bloch_relation_value, delta_beta, edilog, edilog_sum
from .dilog import bloch_wigner
from .efield import evaluate, one_minus, random_function
from .errors import InvalidArgumentError, NonPrincipalDivisorError, NumericalFailure
from .reduction import Budget, decompose_bloch_relation, reduce, verify_certificate
from .rootfind import fiber_residuals
from . import serialize
from .torus import Lattice, TorusPoint

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_VERIFY = 0, 2, 3, 4
CROSS_CHECK_TOL = 1e-8


def _complex_arg(text):
    try:
        re_, im_ = text.split(",")
        z = complex(float(re_), float(im_))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    if not np.isfinite(z):
        raise argparse.ArgumentTypeError("value must be finite")
    return z


def _fmt(z):
    z = complex(z)
    return f"{z.real!r},{z.imag!r}"


def _load_fn(path):
    return serialize.function_from_dict(serialize.load(path))


# -- commands -----------------------------------------------------------------

def cmd_dilog(args):
    print(repr(float(bloch_wigner(args.z))))
    return EXIT_OK


def cmd_edilog(args):
    lat = Lattice(args.tau)
    print(repr(edilog(TorusPoint(args.xi, lat))))
    return EXIT_OK


def cmd_fn_random(args):
    f = random_function(Lattice(args.tau), args.degree, args.seed)
    serialize.dump(serialize.function_to_dict(f), args.output)
    return EXIT_OK


def cmd_fn_eval(args):
    f = _load_fn(args.function)
    print(_fmt(evaluate(f, args.z)))
    return EXIT_OK


def cmd_fn_one_minus(args):
    f = _load_fn(args.function)
    g = one_minus(f)
    serialize.dump(serialize.function_to_dict(g), args.output)
    return EXIT_OK


def cmd_bloch_verify(args):
    f = _load_fn(args.function)
    if f.is_constant:
        raise InvalidArgumentError("the Bloch relation needs a non-constant function")
    element = delta_beta(f)
    value = bloch_relation_value(f)
    via_sum = edilog_sum(element)
    gap = abs(value - via_sum)
    ok = abs(value) < config.TOL_ANALYTIC and gap < CROSS_CHECK_TOL
    print(f"degree: {f.degree}")
    print(f"residual: {abs(value)!r}")
    print(f"formal_zero: {str(element.is_zero()).lower()}")
    if args.report == "residuals":
        g = one_minus(f)
        fiber = g.divisor().zeros()
        print(f"terms: {len(element)}")
        print(f"edilog_sum: {via_sum!r}")
        print(f"cross_check_gap: {gap!r}")
        print(f"fiber_residual_max: {float(np.max(fiber_residuals(f, 1.0, fiber)))!r}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bloch_decompose(args):
    f = _load_fn(args.function)
    rels, report = decompose_bloch_relation(f, Budget(seed=args.seed))
    serialize.dump(serialize.rel3_to_dict(rels, f.lattice, report), args.output)
    print(f"instances: {len(rels)}")
    print(f"difference: {report.difference!r}")
    print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_reduce(args):
    f = _load_fn(args.function)
    cert = reduce(f, Budget(seed=args.seed))
    serialize.dump(serialize.certificate_to_dict(cert), args.output)
    print(f"steps: {len(cert.steps)}")
    print(f"terminals: {len(cert.terminals)}")
    return EXIT_OK


def cmd_cert_verify(args):
    cert = serialize.certificate_from_dict(serialize.load(args.certificate))
    rep = verify_certificate(cert)
    print(f"formal: {'pass' if rep.formal else 'fail'}")
    print(f"zeminus: {'pass' if rep.zeminus else 'fail'}")
    print(f"analytic: {'pass' if rep.analytic else 'fail'} ({rep.analytic_value!r})")
    for m in rep.messages:
        print(f"note: {m}")
    return EXIT_OK if rep.passed else EXIT_VERIFY


# -- parser -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="ellipdilog",
                                description="Elliptic dilogarithm and Bloch relation tools")
    p.add_argument("--eps", type=float, default=1e-8, help="point-matching tolerance")
    p.add_argument("--tol-analytic", type=float, default=1e-6,
                   help="bound for sums of elliptic dilogarithm values")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dilog", help="Bloch-Wigner dilogarithm D(z)")
    s.add_argument("--z", type=_complex_arg, required=True)
    s.set_defaults(func=cmd_dilog)

    s = sub.add_parser("edilog", help="elliptic dilogarithm D_tau(xi)")
    s.add_argument("--tau", type=_complex_arg, required=True)
    s.add_argument("--xi", type=_complex_arg, required=True)
    s.set_defaults(func=cmd_edilog)

    fn = sub.add_parser("fn", help="elliptic functions in divisor form")
    fsub = fn.add_subparsers(dest="fn_command", required=True)
    s = fsub.add_parser("random")
    s.add_argument("--tau", type=_complex_arg, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_fn_random)
    s = fsub.add_parser("eval")
    s.add_argument("-f", "--function", required=True)
    s.add_argument("--z", type=_complex_arg, required=True)
    s.set_defaults(func=cmd_fn_eval)
    s = fsub.add_parser("one-minus")
    s.add_argument("-f", "--function", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_fn_one_minus)

    bl = sub.add_parser("bloch", help="elliptic Bloch relations")
    bsub = bl.add_subparsers(dest="bloch_command", required=True)
    s = bsub.add_parser("verify")
    s.add_argument("-f", "--function", required=True)
    s.add_argument("--report", choices=["residuals"])
    s.set_defaults(func=cmd_bloch_verify)
    s = bsub.add_parser("decompose")
    s.add_argument("-f", "--function", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bloch_decompose)

    s = sub.add_parser("reduce", help="degree-reduction certificate")
    s.add_argument("-f", "--function", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_reduce)

    ce = sub.add_parser("cert", help="certificates")
    csub = ce.add_subparsers(dest="cert_command", required=True)
    s = csub.add_parser("verify")
    s.add_argument("-c", "--certificate", required=True)
    s.set_defaults(func=cmd_cert_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with config.tolerances(args.eps, args.tol_analytic):
            return args.func(args)
    except NonPrincipalDivisorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InvalidArgumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
