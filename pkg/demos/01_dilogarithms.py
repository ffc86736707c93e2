"""Bloch-Wigner and elliptic dilogarithms: values and symmetries."""

import numpy as np

from ellipdilog import Lattice, TorusPoint, bloch_wigner, edilog, two_torsion

# D(i) is Catalan's constant
print("D(i)           =", bloch_wigner(1j))

# D is odd under z -> 1/z and z -> conj(z), and vanishes on the real line
rng = np.random.default_rng(0)
z = np.exp(rng.normal(size=5)) * np.exp(2j * np.pi * rng.random(5))
print("D(z) + D(1/z)  =", np.max(np.abs(bloch_wigner(z) + bloch_wigner(1 / z))))
print("D(z) + D(z*)   =", np.max(np.abs(bloch_wigner(z) + bloch_wigner(np.conj(z)))))

# the elliptic version lives on C / (Z + tau Z)
lat = Lattice(0.15 + 1.1j)
xi = TorusPoint(0.23 + 0.41 * lat.tau, lat)
print("D_tau(xi)      =", edilog(xi))
print("D_tau(-xi)     =", edilog(-xi))
print("on E[2]        =", [round(edilog(t), 15) for t in two_torsion(lat)])

# a small table along a line in the torus
u = np.linspace(0, 1, 9)
print("D_tau(u + tau/3):")
for uu, val in zip(u, edilog(u + lat.tau / 3, lat)):
    print(f"  u = {uu:.3f}   {val: .12f}")
