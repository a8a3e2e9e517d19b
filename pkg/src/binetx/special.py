"""Real log-gamma, digamma, polygamma and the classical Binet remainder.

Everything here works on positive real scalars in double precision.  The
Bernoulli numbers are generated once at import from their recurrence and
reused by every asymptotic series in the package.
"""

import math
from fractions import Fraction

__all__ = [
    "DomainError",
    "BERNOULLI_2K",
    "EULER_GAMMA",
    "LN_SQRT_2PI",
    "bernoulli_numbers",
    "log_gamma",
    "digamma",
    "polygamma",
    "theta_classic",
    "theta_classic_deriv",
]

EULER_GAMMA = 0.57721566490153286
LN_SQRT_2PI = 0.91893853320467274

# Number of B_2k kept in the table; the kernel series reach B_40.
_N_BERNOULLI = 20
# Asymptotic (Stirling-type) series switch-over point.
_ASYMPTOTIC_MIN = 10.0
# Terms of the Stirling / polygamma asymptotic series.
_N_ASYMPTOTIC = 10


class DomainError(ValueError):
    """Argument outside the domain where the function is defined."""


def bernoulli_numbers(n_even):
    """Return ``[B_2, B_4, ..., B_{2*n_even}]`` as exact fractions.

    Uses the defining recurrence ``sum_{j<=m} C(m+1, j) B_j = 0``.
    """
    m_max = 2 * n_even
    b = [Fraction(1)]
    for m in range(1, m_max + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return [b[2 * k] for k in range(1, n_even + 1)]


BERNOULLI_2K = tuple(float(v) for v in bernoulli_numbers(_N_BERNOULLI))


def _zeta_int(s, n=12, terms=12):
    """Riemann zeta at an integer s >= 2 by Euler-Maclaurin summation."""
    head = math.fsum(j ** -s for j in range(1, n))
    tail = n ** (1 - s) / (s - 1) + 0.5 * n ** -s
    # rising factorial s(s+1)...(s+2k-2) / (2k)!
    coef = s
    for k in range(1, terms + 1):
        tail += BERNOULLI_2K[k - 1] / math.factorial(2 * k) * coef * n ** (-s - 2 * k + 1)
        coef *= (s + 2 * k - 1) * (s + 2 * k)
    return head + tail


# ln Gamma(1+z) = -gamma z + sum_k (-1)^k zeta(k) z^k / k, |z| < 1
_N_TAYLOR = 32
_ZETA = {k: _zeta_int(k) for k in range(2, _N_TAYLOR + 1)}
_TAYLOR_RADIUS = 0.25

# Lanczos, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _check_positive(name, x):
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"{name} requires a finite positive argument, got {x!r}")


def _lgamma_near_one(z):
    # ln Gamma(1+z) for |z| <= 1/4
    s = 0.0
    zk = z * z
    for k in range(2, _N_TAYLOR + 1):
        s += (-1) ** k * _ZETA[k] * zk / k
        zk *= z
    return -EULER_GAMMA * z + s


def _lgamma_near_two(z):
    # ln Gamma(2+z) for |z| <= 1/4; uses zeta(k) - 1 to avoid cancellation
    s = 0.0
    zk = z * z
    for k in range(2, _N_TAYLOR + 1):
        s += (-1) ** k * (_ZETA[k] - 1.0) * zk / k
        zk *= z
    return (1.0 - EULER_GAMMA) * z + s


def _lgamma_lanczos(x):
    # valid for x >= 1/2
    x -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return LN_SQRT_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def _stirling_tail(x):
    # sum_k B_2k / (2k (2k-1) x^(2k-1)), which is theta(x) for large x
    inv = 1.0 / x
    inv2 = inv * inv
    s = 0.0
    p = inv
    for k in range(1, _N_ASYMPTOTIC + 1):
        s += BERNOULLI_2K[k - 1] / (2 * k * (2 * k - 1)) * p
        p *= inv2
    return s


def _stirling_tail_deriv(x, k):
    # term-by-term k-th derivative of _stirling_tail; no cancellation
    inv = 1.0 / x
    s = 0.0
    for m in range(1, _N_ASYMPTOTIC + 1):
        e = 2 * m - 1
        # d^k/dx^k x^-e = (-1)^k e (e+1) ... (e+k-1) x^-(e+k)
        rising = math.prod(range(e, e + k))
        s += BERNOULLI_2K[m - 1] / (2 * m * e) * rising * inv ** (e + k)
    return (-1) ** k * s


def log_gamma(x):
    """Natural logarithm of the gamma function for ``x > 0``."""
    x = float(x)
    _check_positive("log_gamma", x)
    if x >= _ASYMPTOTIC_MIN:
        return (x - 0.5) * math.log(x) - x + LN_SQRT_2PI + _stirling_tail(x)
    if abs(x - 1.0) <= _TAYLOR_RADIUS:
        return _lgamma_near_one(x - 1.0)
    if abs(x - 2.0) <= _TAYLOR_RADIUS:
        return _lgamma_near_two(x - 2.0)
    if x < 0.5:
        # Gamma(x) = Gamma(x+1) / x
        return log_gamma(x + 1.0) - math.log(x)
    return _lgamma_lanczos(x)


def digamma(x):
    """Logarithmic derivative of the gamma function, ``x > 0``."""
    x = float(x)
    _check_positive("digamma", x)
    shift = 0.0
    while x < _ASYMPTOTIC_MIN:
        shift += 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    p = inv2
    s = 0.0
    for k in range(1, _N_ASYMPTOTIC + 1):
        s += BERNOULLI_2K[k - 1] / (2 * k) * p
        p *= inv2
    return math.log(x) - 0.5 / x - s - shift


def polygamma(n, x):
    """``n``-th derivative of the digamma function, ``1 <= n <= 8``.

    The argument is shifted upward by the recurrence
    ``psi^(n)(x) = psi^(n)(x+1) + (-1)^(n+1) n! / x^(n+1)`` until it clears
    the asymptotic threshold, then the Bernoulli series takes over.
    """
    if int(n) != n or not 1 <= n <= 8:
        raise DomainError(f"polygamma order must be an integer in [1, 8], got {n!r}")
    n = int(n)
    x = float(x)
    _check_positive("polygamma", x)
    sign = 1.0 if n % 2 == 1 else -1.0
    nfact = math.factorial(n)
    threshold = _ASYMPTOTIC_MIN + 2.0 * n
    shift = 0.0
    while x < threshold:
        shift += x ** -(n + 1)
        x += 1.0
    inv = 1.0 / x
    s = math.factorial(n - 1) * inv**n + 0.5 * nfact * inv ** (n + 1)
    p = inv ** (n + 2)
    inv2 = inv * inv
    for k in range(1, _N_ASYMPTOTIC + 1):
        s += BERNOULLI_2K[k - 1] * math.factorial(2 * k + n - 1) / math.factorial(2 * k) * p
        p *= inv2
    return sign * (s + nfact * shift)


def _binet_step(y):
    # theta(y) - theta(y+1) = (y + 1/2) log1p(1/y) - 1
    z = 1.0 / (2.0 * y + 1.0)
    if z > 0.5:
        return (y + 0.5) * math.log1p(1.0 / y) - 1.0
    # atanh(z)/z - 1 = sum_{j>=1} z^(2j) / (2j+1)
    z2 = z * z
    s = 0.0
    p = z2
    j = 1
    while p > 1e-18 * z2:
        s += p / (2 * j + 1)
        p *= z2
        j += 1
    return s


def theta_classic(x):
    """Remainder of Binet's first formula,
    ``ln Gamma(x) - (x - 1/2) ln x + x - ln sqrt(2 pi)``.

    Evaluated without forming ``ln Gamma`` so that small values at large
    ``x`` keep full relative precision.
    """
    x = float(x)
    _check_positive("theta_classic", x)
    steps = []
    while x < _ASYMPTOTIC_MIN:
        steps.append(_binet_step(x))
        x += 1.0
    steps.append(_stirling_tail(x))
    return math.fsum(steps)


def theta_classic_deriv(x, k):
    """k-th derivative of :func:`theta_classic`.

    Below the asymptotic threshold the digamma/polygamma forms are used;
    above it the Stirling tail is differentiated term by term, which avoids
    the cancellation between ``psi^(k-1)`` and its leading terms.

    ``theta'(x) = psi(x) - ln x + 1/(2x)`` and, for ``k >= 2``,
    ``theta^(k)(x) = psi^(k-1)(x) - (-1)^k (k-2)!/x^(k-1) + (-1)^(k-1) (k-1)!/(2 x^k)``.
    """
    if int(k) != k or k < 0:
        raise DomainError(f"derivative order must be a non-negative integer, got {k!r}")
    k = int(k)
    x = float(x)
    _check_positive("theta_classic_deriv", x)
    if k == 0:
        return theta_classic(x)
    if x >= _ASYMPTOTIC_MIN:
        return _stirling_tail_deriv(x, k)
    if k == 1:
        return digamma(x) - math.log(x) + 0.5 / x
    return (
        polygamma(k - 1, x)
        - (-1) ** k * math.factorial(k - 2) / x ** (k - 1)
        + 0.5 * (-1) ** (k - 1) * math.factorial(k - 1) / x**k
    )
