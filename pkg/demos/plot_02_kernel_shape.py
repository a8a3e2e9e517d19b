"""
Shape of the kernel delta_{a,b}
===============================

The kernel rises from (a+b)/2 at t = 0+ to max(a, b) at infinity, is concave
on the positive axis and convex on the negative one.
"""

import numpy as np

from binetx.kernel import KernelParams, delta, delta_limit_inf, delta_limit_zero, delta_prime, delta_second, q_factor

params = KernelParams(1.0, 3.0)
t = np.geomspace(1e-4, 100, 9)

print(f"limits: delta(0+) = {delta_limit_zero(params)}, delta(inf) = {delta_limit_inf(params)}")
print(f"{'t':>10} {'delta':>12} {'delta_prime':>12} {'delta_second':>13}")
for row in zip(t, delta(params, t), delta_prime(params, t), delta_second(params, t)):
    print("{:10.4g} {:12.8f} {:12.4e} {:13.4e}".format(*row))

# delta(tau t) < delta(t), and tau delta(t) < delta(tau t) because a+b >= 0
tau = 0.4
print("increasing:      ", np.all(delta(params, tau * t) < delta(params, t)))
print("star inequality: ", np.all(tau * delta(params, t) < delta(params, tau * t)))

# the symmetric pair gives a ratio that tends to tau at the origin
sym = KernelParams(-1.0, 1.0)
print("delta(0.3e-6)/delta(1e-6) =", delta(sym, 0.3e-6) / delta(sym, 1e-6))

# the Lazarevic factor stays negative, with Q(t) ~ -t^4/15 near 0
s = np.array([1e-2, 0.1, 1.0, 5.0])
print("Q(t):", q_factor(s))
print("Q(1e-2)/1e-8 =", q_factor(1e-2) / 1e-8, " -1/15 =", -1 / 15)
