"""The kernel delta_{a,b}(t) and its relatives.

``delta_{a,b}(t) = (b-a)/(exp((b-a)t) - 1) - 1/t + b`` is the logarithmic
derivative of ``g_{e^a,e^b}(t) = (e^{bt} - e^{at})/t``.  Writing
``s = b - a`` and ``u = s t`` it splits as ``mid + s * phi(u)`` where
``phi(u) = 1/expm1(u) - 1/u + 1/2`` is odd and analytic for ``|u| < 2 pi``.
All evaluators accept scalars or numpy arrays.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from .special import BERNOULLI_2K, DomainError

__all__ = [
    "KernelParams",
    "g_xy",
    "F_ab",
    "delta",
    "delta_series",
    "delta_prime",
    "delta_second",
    "delta_limit_zero",
    "delta_prime_limit_zero",
    "delta_limit_inf",
    "q_factor",
]

# default length of the public truncated series
SERIES_TERMS = 8
# |u| below which delta and its derivatives are summed from the series; the
# closed forms cancel too much closer in (terms ratio (u/2pi)^2 <= 0.1 at 2)
SERIES_SWITCH = 2.0
_SWITCH_TERMS = 18

# c_k = B_2k / (2k)!  so that phi(u) = sum c_k u^(2k-1)
_PHI_COEF = np.array([BERNOULLI_2K[k - 1] / factorial(2 * k) for k in range(1, len(BERNOULLI_2K) + 1)])


@dataclass(frozen=True)
class KernelParams:
    """Parameter pair (a, b), a != b, of delta_{a,b}."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise DomainError(f"kernel parameters must be finite, got a={a!r}, b={b!r}")
        if a == b:
            raise DomainError("kernel parameters require a != b")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def symmetric(cls, alpha):
        """The pair (-alpha/2, alpha/2) used by the extended remainder."""
        return cls(-0.5 * alpha, 0.5 * alpha)

    @property
    def span(self):
        return self.b - self.a

    @property
    def mid(self):
        return 0.5 * (self.a + self.b)

    @property
    def hi(self):
        return max(self.a, self.b)


def _nonzero(t, name):
    t = np.asarray(t, dtype=float)
    if np.any(t == 0.0):
        raise DomainError(f"{name} is undefined at t = 0; use the limit value")
    return t


def _out(x):
    return x.item() if np.ndim(x) == 0 else x


def g_xy(x, y, t):
    """``int_x^y u^(t-1) du``: ``(y^t - x^t)/t``, or ``ln(y/x)`` at t = 0."""
    if not (x > 0 and y > x):
        raise DomainError(f"g_xy requires 0 < x < y, got x={x!r}, y={y!r}")
    t = np.asarray(t, dtype=float)
    lr = np.log(y) - np.log(x)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        # x^t (exp(t ln(y/x)) - 1) / t
        val = np.power(x, t) * np.expm1(t * lr) / t
    return _out(np.where(t == 0.0, lr, val))


def F_ab(params, t):
    """Reciprocal of ``g_{e^a, e^b}(t)``: ``t/(e^{bt} - e^{at})``, ``1/(b-a)`` at 0."""
    a, b, s = params.a, params.b, params.span
    t = np.asarray(t, dtype=float)
    u = s * t
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        # factor out the larger exponential so the denominator never overflows
        pos = t * np.exp(-b * t) / -np.expm1(-u)
        neg = t * np.exp(-a * t) / np.expm1(u)
        val = np.where(u > 0, pos, neg)
    return _out(np.where(t == 0.0, 1.0 / s, val))


def _phi_series(u, terms):
    u = np.asarray(u, dtype=float)
    u2 = u * u
    acc = np.zeros_like(u)
    for c in _PHI_COEF[:terms][::-1]:
        acc = acc * u2 + c
    return acc * u


def delta_series(params, t, terms=SERIES_TERMS):
    """Taylor sum ``mid + sum_{k<=terms} B_2k s^2k t^(2k-1) / (2k)!``.

    Only valid for ``|s t| < 1/2``; outside that a :class:`DomainError`
    is raised.
    """
    t = np.asarray(t, dtype=float)
    u = params.span * t
    if np.any(np.abs(u) >= 0.5):
        raise DomainError("delta_series requires |(b-a) t| < 1/2")
    if not 1 <= terms <= len(_PHI_COEF):
        raise DomainError(f"terms must be in [1, {len(_PHI_COEF)}]")
    return _out(params.mid + params.span * _phi_series(u, terms))


def delta(params, t):
    """delta_{a,b}(t) for t != 0."""
    t = _nonzero(t, "delta")
    a, b, s = params.a, params.b, params.span
    u = s * t
    small = np.abs(u) < SERIES_SWITCH
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        # s/expm1(u), written through exp(-u) when u > 0 so it saturates to 0
        frac = np.where(u > 0, s * np.exp(-u) / -np.expm1(-u), s / np.expm1(u))
        big = frac - 1.0 / t + b
    ser = params.mid + s * _phi_series(np.where(small, u, 0.0), _SWITCH_TERMS)
    return _out(np.where(small, ser, big))


def _dphi(u):
    # phi'(u) = 1/u^2 - e^u/(e^u - 1)^2, even in u
    au = np.abs(u)
    small = au < SERIES_SWITCH
    us = np.where(small, au, 0.0)
    u2 = us * us
    acc = np.zeros_like(us)
    for k in range(_SWITCH_TERMS, 0, -1):
        acc = acc * u2 + (2 * k - 1) * _PHI_COEF[k - 1]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        em = np.exp(-au)
        big = 1.0 / (au * au) - em / np.expm1(-au) ** 2
    return np.where(small, acc, big)


def _ddphi(u):
    # phi''(u) = -2/u^3 + e^u (e^u + 1)/(e^u - 1)^3, odd in u
    au = np.abs(u)
    sign = np.sign(u)
    small = au < SERIES_SWITCH
    us = np.where(small, au, 0.0)
    u2 = us * us
    acc = np.zeros_like(us)
    for k in range(_SWITCH_TERMS, 1, -1):
        acc = acc * u2 + (2 * k - 1) * (2 * k - 2) * _PHI_COEF[k - 1]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        em = np.exp(-au)
        big = -2.0 / au**3 - em * (1.0 + em) / np.expm1(-au) ** 3
    return sign * np.where(small, acc * us, big)


def delta_prime(params, t):
    """First derivative ``1/t^2 - (a-b)^2 e^{(a+b)t} / (e^{at} - e^{bt})^2``."""
    t = _nonzero(t, "delta_prime")
    s = params.span
    return _out(s * s * _dphi(s * t))


def delta_second(params, t):
    """Second derivative of delta_{a,b}; negative for t > 0, positive for t < 0."""
    t = _nonzero(t, "delta_second")
    s = params.span
    return _out(s**3 * _ddphi(s * t))


def delta_limit_zero(params):
    """delta_{a,b}(0+) = (a+b)/2."""
    return params.mid


def delta_prime_limit_zero(params):
    """delta'_{a,b}(0+) = (a-b)^2/12."""
    return params.span**2 / 12.0


def delta_limit_inf(params):
    """delta_{a,b}(+inf) = max(a, b)."""
    return params.hi


# Q(t) = sum_m q_m t^(2m);  q_0 = q_1 = 0, q_2 = -1/15
_Q_TERMS = 16
_Q_COEF = np.array(
    [1.0 / factorial(2 * m) - (3 ** (2 * m + 3) - 3) / (4.0 * factorial(2 * m + 3)) for m in range(_Q_TERMS)]
)


def q_factor(t):
    """``cosh t - (sinh t / t)^3``, strictly negative for t != 0."""
    t = _nonzero(t, "q_factor")
    at = np.abs(t)
    small = at < 1.0
    ts = np.where(small, at, 0.0)
    t2 = ts * ts
    acc = np.zeros_like(ts)
    for c in _Q_COEF[:1:-1]:
        acc = acc * t2 + c
    ser = acc * t2 * t2
    with np.errstate(over="ignore", invalid="ignore"):
        big = np.cosh(at) - (np.sinh(at) / at) ** 3
    return _out(np.where(small, ser, big))
