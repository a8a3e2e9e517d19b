"""
Laplace integrals of the kernel
===============================

The integral of delta_{a,b}(t) e^{-xt}/t over (0, inf) converges exactly
when a + b = 0.  Otherwise truncating at eps blows up like
((a+b)/2) ln(1/eps), and the fitted slope recovers that coefficient.
"""

import numpy as np

from binetx.kernel import KernelParams, delta
from binetx.quad import divergence_scan, integrate_semi_infinite

# a plain exponential: integral of t e^{-2t} is 1/4
res = integrate_semi_infinite(lambda t: t, 2.0)
print("int t e^{-2t} dt =", res.value, "+/-", res.err_estimate, "in", res.evaluations, "evaluations")

# the symmetric kernel reproduces theta(1)
sym = KernelParams(-0.5, 0.5)
res = integrate_semi_infinite(lambda t: delta(sym, t) / t, 1.0, scale=1.0)
print("theta(1) by quadrature =", res.value)

eps = np.geomspace(1e-2, 1e-6, 5)
for a, b, x in [(-0.5, 0.5, 1.0), (0.0, 1.0, 1.0), (1.0, 3.0, 2.0), (-2.0, -0.5, 1.0)]:
    fit = divergence_scan(KernelParams(a, b), x, eps)
    print(f"(a, b) = ({a:5.2f}, {b:5.2f})  slope = {fit.slope: .8f}  (a+b)/2 = {(a + b) / 2: .2f}")
