"""
K1 and the product of two exponentials
======================================

Every closed-form term of the shape ``1 - x K1(x)`` is the CDF of a product
of two independent exponential gains. Check that numerically.
"""

import numpy as np

from d2drelay import bessel_k1
from d2drelay.bessel import one_minus_xk1

for x in (1e-4, 0.1, 1.0, 2.0, 5.0, 10.0):
    print(f"K1({x:g}) = {bessel_k1(x):.12g}   x*K1(x) = {x * bessel_k1(x):.12g}")

# P(A*B <= z) with A ~ Exp(mean m1), B ~ Exp(mean m2) equals 1 - x K1(x)
# at x = sqrt(4 z / (m1 m2)).
rng = np.random.default_rng(4)
m1, m2 = 30.0**-3, 20.0**-3
prod = rng.exponential(m1, 10**6) * rng.exponential(m2, 10**6)
for z in (1e-10, 1e-9, 5e-9):
    x = np.sqrt(4 * z / (m1 * m2))
    print(f"z={z:.0e}: empirical {np.mean(prod <= z):.4f}   closed form {one_minus_xk1(x):.4f}")
