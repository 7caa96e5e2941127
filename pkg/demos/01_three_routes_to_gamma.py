"""
Three routes to Gamma(z)
========================

The production evaluator, the truncated infinite product and the Euler
integral, side by side.
"""

import math

from gammapoles import gamma, gamma_integral, gamma_weierstrass

# Gamma(1/2) = sqrt(pi); the product converges only like 1/N
print("N         product at 1/2          relative error")
for N in (10, 100, 1000, 10**4, 10**5, 10**6):
    v = gamma_weierstrass(0.5, N)
    print(f"{N:<9d} {v:.15f}   {abs(v / math.sqrt(math.pi) - 1):.2e}")

# the integral needs Re(z) > 0 but is accurate to ~1e-13 with a few hundred nodes
for z in (0.5 + 1j, 3 - 2j, 0.1 + 9j):
    a, b = gamma(z), gamma_integral(z, 400)
    print(f"Gamma({z}) = {a:.12g}   integral differs by {abs(a - b) / abs(a):.1e}")

# at z = 2 the product telescopes to (N+1)/(N+2)
print(gamma_weierstrass(2, 98, exact=True), gamma_weierstrass(2, 98))
