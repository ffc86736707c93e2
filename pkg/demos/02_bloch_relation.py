"""The elliptic Bloch relation for a random function on a torus."""

import numpy as np

from ellipdilog import (
    Lattice, bloch_relation_value, delta_beta, edilog_sum, one_minus, random_function,
    solve_fiber,
)
from ellipdilog.rootfind import fiber_residuals

lat = Lattice(-0.3 + 0.8j)
f = random_function(lat, 4, seed=7)
print("f:", f)
print("zeros:", np.round(f.zeros, 6))
print("poles:", np.round(f.poles, 6))

# 1 - f in divisor form: its zeros are the solutions of f = 1
g = one_minus(f)
print("f = 1 at:", np.round(g.zeros, 6))
print("max |f - 1| there:", np.max(fiber_residuals(f, 1.0, g.zeros)))

# a fiber at some other value, with multiplicities
fib = solve_fiber(f, 0.4 - 2j)
print("fiber of 0.4-2i:", fib)

# the nine-by-n sum of elliptic dilogarithms vanishes ...
value = bloch_relation_value(f)
print("Bloch relation value:", value)

# ... and equals the extended dilogarithm of the formal element
element = delta_beta(f)
print("formal element has", len(element), "point classes; D~ =", edilog_sum(element))

# in degree 2 the element is already zero before any analysis
print("degree 2 element is zero:", delta_beta(random_function(lat, 2, seed=1)).is_zero())
