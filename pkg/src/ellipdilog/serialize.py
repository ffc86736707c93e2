"""JSON encodings.  Complex numbers are ``[re, im]`` pairs of doubles.

function:     {"tau": c, "scale": c, "zeros": [c...], "poles": [c...]}
certificate:  {"target": fn, "steps": [{"x": fn, "y": fn, "sign": +-1}...],
               "terminals": [{"coeff": k, "f": fn}...]}
Z[E]^- sum:   {"tau": c, "terms": [{"point": c, "coeff": k}...]}
function sum: {"tau": c, "terms": [{"coeff": k, "f": fn}...]}
rel3 list:    {"tau": c, "instances": [{"alpha": [c,c,c], "beta": ..., "gamma": ...,
               "coefficient": k}...]}
"""

import json
import math

import numpy as np

from . import config
from .bloch import FunctionSum, ZEMinusSum
from .efield import EllipticFunction, _balance
from .errors import InvalidArgumentError, NonPrincipalDivisorError
from .reduction import FiveTermInstance, ReductionCertificate, Rel3Instance
from .torus import Lattice, TorusPoint


def enc_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def dec_complex(v):
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise InvalidArgumentError(f"expected a [re, im] pair, got {v!r}")
    try:
        z = complex(float(v[0]), float(v[1]))
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"bad complex pair {v!r}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidArgumentError("complex values must be finite")
    return z


def _field(obj, key):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidArgumentError(f"missing field {key!r}")
    return obj[key]


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidArgumentError(f"{what} must be an integer")
    return v


# -- functions --------------------------------------------------------------

def function_to_dict(f):
    return {
        "tau": enc_complex(f.lattice.tau),
        "scale": enc_complex(f.scale),
        "zeros": [enc_complex(z) for z in f.zeros],
        "poles": [enc_complex(z) for z in f.poles],
    }


def function_from_dict(d, lattice=None):
    tau = dec_complex(_field(d, "tau"))
    if lattice is None or lattice.tau != tau:
        lattice = Lattice(tau)
    scale = dec_complex(_field(d, "scale"))
    zeros = [dec_complex(z) for z in _field(d, "zeros")]
    poles = [dec_complex(z) for z in _field(d, "poles")]
    if len(zeros) != len(poles):
        raise NonPrincipalDivisorError("divisor has nonzero degree")
    zeros = np.array(zeros, dtype=complex)
    poles = np.array(poles, dtype=complex)
    if len(zeros):
        omega, resid = lattice.lattice_part(complex(np.sum(zeros) - np.sum(poles)))
        if abs(complex(resid)) > config.EPS:
            raise NonPrincipalDivisorError(
                f"zero and pole sums differ by a non-lattice amount ({abs(complex(resid)):.3g})")
        if abs(complex(omega)) > 0.5:
            zeros, poles = _balance(zeros, poles, lattice)
    return EllipticFunction(lattice, zeros, poles, scale)


# -- formal sums --------------------------------------------------------------

def zeminus_to_dict(s):
    return {"tau": enc_complex(s.lattice.tau),
            "terms": [{"point": enc_complex(p.lift), "coeff": int(c)} for p, c in s.terms()]}


def zeminus_from_dict(d):
    lattice = Lattice(dec_complex(_field(d, "tau")))
    out = ZEMinusSum(lattice)
    for t in _field(d, "terms"):
        out.add(dec_complex(_field(t, "point")), _int(_field(t, "coeff"), "coeff"))
    return out


def function_sum_to_dict(s):
    return {"tau": enc_complex(s.lattice.tau),
            "terms": [{"coeff": int(c), "f": function_to_dict(f)} for c, f in s]}


def function_sum_from_dict(d, lattice=None):
    lattice = lattice or Lattice(dec_complex(_field(d, "tau")))
    out = FunctionSum(lattice)
    for t in _field(d, "terms"):
        out.add(function_from_dict(_field(t, "f"), lattice), _int(_field(t, "coeff"), "coeff"))
    return out


# -- certificates and nine-point configurations --------------------------------

def certificate_to_dict(cert):
    return {
        "target": function_to_dict(cert.target),
        "steps": [{"x": function_to_dict(s.x), "y": function_to_dict(s.y), "sign": int(s.sign)}
                  for s in cert.steps],
        "terminals": [{"coeff": int(k), "f": function_to_dict(g)} for k, g in cert.terminals],
    }


def certificate_from_dict(d):
    target = function_from_dict(_field(d, "target"))
    lat = target.lattice
    steps = []
    for s in _field(d, "steps"):
        sign = _int(_field(s, "sign"), "sign")
        steps.append(FiveTermInstance(function_from_dict(_field(s, "x"), lat),
                                      function_from_dict(_field(s, "y"), lat), sign))
    terminals = FunctionSum(lat)
    for t in _field(d, "terminals"):
        terminals.add(function_from_dict(_field(t, "f"), lat), _int(_field(t, "coeff"), "coeff"))
    return ReductionCertificate(target, steps, terminals)


def rel3_to_dict(instances, lattice, report=None):
    out = {
        "tau": enc_complex(lattice.tau),
        "instances": [{
            "alpha": [enc_complex(p.lift) for p in r.alpha],
            "beta": [enc_complex(p.lift) for p in r.beta],
            "gamma": [enc_complex(p.lift) for p in r.gamma],
            "coefficient": int(r.coefficient),
        } for r in instances],
    }
    if report is not None:
        out["report"] = {
            "bloch_value": report.bloch_value,
            "rel3_value": report.rel3_value,
            "difference": report.difference,
            "formal": report.formal,
            "low_degree_zero": report.low_degree_zero,
        }
    return out


def rel3_from_dict(d):
    lattice = Lattice(dec_complex(_field(d, "tau")))
    out = []
    for r in _field(d, "instances"):
        pts = {k: tuple(TorusPoint(dec_complex(z), lattice) for z in _field(r, k))
               for k in ("alpha", "beta", "gamma")}
        out.append(Rel3Instance(pts["alpha"], pts["beta"], pts["gamma"],
                                _int(_field(r, "coefficient"), "coefficient")))
    return out, lattice


# -- files ----------------------------------------------------------------------

def dump(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, allow_nan=False)
        fh.write("\n")


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InvalidArgumentError(f"{path}: {exc.strerror}") from exc
