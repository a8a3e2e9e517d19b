"""
Special functions behind the remainder
======================================

Log-gamma, digamma and the Binet remainder theta(x), checked against a
few values that are known exactly.
"""

import math

import numpy as np

from binetx.special import bernoulli_numbers, digamma, log_gamma, polygamma, theta_classic

# Bernoulli numbers come out as exact fractions
print("B_0..B_10:", [str(b) for b in bernoulli_numbers(10)])

# ln Gamma(10) is ln(9!)
print("ln Gamma(10) =", log_gamma(10.0), " ln 9! =", math.log(math.factorial(9)))

# psi(1) = -gamma and psi'(1) = pi^2/6
print("psi(1)  =", digamma(1.0))
print("psi'(1) =", polygamma(1, 1.0), " pi^2/6 =", math.pi**2 / 6)

# theta(1) = 1 - ln sqrt(2 pi), theta(1/2) = (1 - ln 2)/2
print("theta(1)   =", theta_classic(1.0))
print("theta(1/2) =", theta_classic(0.5))

# theta(x) ~ 1/(12x) for large x
x = np.geomspace(1, 1000, 7)
ratio = np.array([theta_classic(v) for v in x]) * 12 * x
for v, r in zip(x, ratio):
    print(f"x = {v:8.2f}   12 x theta(x) = {r:.12f}")
