"""Extended Binet remainder theta_alpha(x) and the family f_{p,q;alpha}.

``theta_alpha(x) = int_0^inf delta_{-alpha/2, alpha/2}(t) e^{-xt} / t dt``
has the closed form ``alpha ln Gamma(x/alpha) - (x - alpha/2) ln(x/alpha) + x
- (alpha/2) ln(2 pi)``, which is ``alpha * theta(x/alpha)``.  Both routes are
provided so each can check the other.
"""

import math
from dataclasses import dataclass

import numpy as np

from .kernel import KernelParams, delta
from .quad import QuadConfig, QuadResult, QuadratureError, integrate_semi_infinite
from .special import DomainError, theta_classic, theta_classic_deriv

__all__ = [
    "MAX_DERIV",
    "ThetaEval",
    "FpqParams",
    "theta_alpha_closed",
    "theta_alpha_quad",
    "theta_alpha_deriv",
    "theta_weight",
    "h_pq_kernel",
    "f_pq",
]

MAX_DERIV = 6
_METHODS = ("closed", "quad", "both")


@dataclass
class ThetaEval:
    alpha: float
    x: float
    k: int
    closed: float | None = None
    quadrature: QuadResult | None = None
    disagreement: float = 0.0

    @property
    def value(self):
        """Preferred value: the closed form when present."""
        if self.closed is not None:
            return self.closed
        return self.quadrature.value


@dataclass(frozen=True)
class FpqParams:
    p: float
    q: float
    alpha: float

    def __post_init__(self):
        if not self.p > 0:
            raise DomainError(f"p must be positive, got {self.p!r}")
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")


def _check(alpha, x):
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be finite and positive, got {alpha!r}")
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"x must be finite and positive, got {x!r}")


def theta_alpha_closed(alpha, x):
    """Closed form of the extended remainder, computed as alpha*theta(x/alpha)."""
    alpha, x = float(alpha), float(x)
    _check(alpha, x)
    return alpha * theta_classic(x / alpha)


def theta_weight(alpha, k=0):
    """Return ``t -> delta_{-alpha/2,alpha/2}(t) t^(k-1)``, the Laplace weight
    whose transform is ``(-1)^k theta_alpha^(k)``."""
    params = KernelParams.symmetric(alpha)
    if k == 0:
        return lambda t: delta(params, t) / t
    return lambda t: delta(params, t) * t ** (k - 1)


def theta_alpha_quad(alpha, x, cfg=None):
    """theta_alpha(x) by quadrature of its defining Laplace integral."""
    alpha, x = float(alpha), float(x)
    _check(alpha, x)
    return integrate_semi_infinite(theta_weight(alpha), x, cfg, scale=alpha)


def theta_alpha_deriv(alpha, x, k=0, method="closed", cfg=None):
    """k-th derivative of theta_alpha at x by closed form, quadrature, or both.

    The closed route uses ``theta_alpha^(k)(x) = alpha^(1-k) theta^(k)(x/alpha)``.
    The quadrature route integrates ``delta(t) t^(k-1) e^{-xt}``, which equals
    ``(-1)^k theta_alpha^(k)(x)``, and restores the sign.
    """
    alpha, x = float(alpha), float(x)
    _check(alpha, x)
    if int(k) != k or not 0 <= k <= MAX_DERIV:
        raise DomainError(f"derivative order must be an integer in [0, {MAX_DERIV}], got {k!r}")
    k = int(k)
    if method not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}, got {method!r}")

    out = ThetaEval(alpha=alpha, x=x, k=k)
    if method in ("closed", "both"):
        out.closed = alpha ** (1 - k) * theta_classic_deriv(x / alpha, k)
    if method in ("quad", "both"):
        res = integrate_semi_infinite(theta_weight(alpha, k), x, cfg, scale=alpha)
        if k % 2:
            res.value = -res.value
        out.quadrature = res
    if out.closed is not None and out.quadrature is not None:
        out.disagreement = abs(out.closed - out.quadrature.value)
    return out


def h_pq_kernel(params, t):
    """``delta(t/p) - q delta(t)`` with delta = delta_{-alpha/2, alpha/2}."""
    kp = KernelParams.symmetric(params.alpha)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("h_pq_kernel is defined for t > 0")
    out = delta(kp, t / params.p) - params.q * delta(kp, t)
    return out


def f_pq(params, x, method="closed", cfg=None):
    """``theta_alpha(p x) - q theta_alpha(x)``.

    ``method="quad"`` integrates ``h_{p,q;alpha}(t) e^{-xt}/t`` directly, so it
    exercises the kernel decomposition rather than two separate remainders.
    """
    x = float(x)
    _check(params.alpha, x)
    if method == "closed":
        return theta_alpha_closed(params.alpha, params.p * x) - params.q * theta_alpha_closed(params.alpha, x)
    if method != "quad":
        raise ValueError(f"method must be 'closed' or 'quad', got {method!r}")
    res = integrate_semi_infinite(
        lambda t: h_pq_kernel(params, t) / t,
        x,
        cfg,
        scale=params.alpha / max(params.p, 1.0),
    )
    if not res.converged:
        raise QuadratureError(f"f_pq quadrature did not converge at x={x!r} (err={res.err_estimate:.3g})")
    return res.value
