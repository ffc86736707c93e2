"""Degree reduction: a degree-5 function written through degree <= 3 pieces."""

import time
from collections import Counter

from ellipdilog import (
    Lattice, decompose_bloch_relation, random_function, reduce, verify_certificate,
)

lat = Lattice(0.15 + 1.1j)
f = random_function(lat, 5, seed=3)

start = time.perf_counter()
cert = reduce(f)
print(f"reduce: {len(cert.steps)} five-term steps, {len(cert.terminals)} terminals "
      f"({time.perf_counter() - start:.1f}s)")
print("terminal degrees:", dict(Counter(g.degree for _, g in cert.terminals)))

# the certificate is checked from its own data
rep = verify_certificate(cert)
print("formal identity:", rep.formal)
print("zero in Z[E]^- :", rep.zeminus)
print("D~ of the rest :", rep.analytic_value)

# the Bloch relation of f as a combination of nine-point configurations
rels, drep = decompose_bloch_relation(f, certificate=cert)
print(f"{len(rels)} nine-point configurations")
for r in rels[:3]:
    print(f"  coeff {r.coefficient:+d}   value {r.value(): .3e}")
print("Bloch value of f     :", drep.bloch_value)
print("sum over configs     :", drep.rel3_value)
print("difference           :", drep.difference)
