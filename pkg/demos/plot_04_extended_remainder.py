"""
The extended remainder theta_alpha
==================================

theta_alpha(x) = alpha theta(x/alpha), computed both in closed form and as a
Laplace integral, together with its derivatives and the family
f(x) = theta_alpha(p x) - q theta_alpha(x).
"""

import numpy as np

from binetx.remainder import FpqParams, f_pq, h_pq_kernel, theta_alpha_deriv

print(f"{'alpha':>6} {'x':>8} {'closed':>22} {'quadrature':>22} {'gap':>9}")
for alpha in (0.5, 1.0, np.pi):
    for x in (0.1, 1.0, 10.0):
        ev = theta_alpha_deriv(alpha, x, 0, "both")
        print(f"{alpha:6.3f} {x:8.2f} {ev.closed:22.17g} {ev.quadrature.value:22.17g} {ev.disagreement:9.1e}")

# derivatives alternate in sign, as expected of a completely monotonic function
signs = [int(np.sign(theta_alpha_deriv(2.0, 1.5, k).closed)) for k in range(7)]
print("signs of theta_2^(k)(1.5), k = 0..6:", signs)

# f is non-negative when p > 1 and q <= 1/p, non-positive when p, q >= 1
t = np.geomspace(1e-3, 50, 6)
for p, q in [(2.0, 0.5), (2.0, 1.0)]:
    prm = FpqParams(p, q, 1.0)
    print(f"p={p}, q={q}: h(t) = {np.array2string(h_pq_kernel(prm, t), precision=3)}")
    print(f"           f(1) closed = {f_pq(prm, 1.0):.15g}, quadrature = {f_pq(prm, 1.0, 'quad'):.15g}")
