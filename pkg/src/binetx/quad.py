"""Adaptive Gauss-Kronrod quadrature of ``w(t) exp(-x t)`` over ``(lower, inf)``.

The half-line is cut at a point ``T`` beyond which the exponential makes the
remainder negligible; the bound ``M exp(-x T) / x`` with ``M`` the sampled
sup of ``|w|`` on ``[T, T+1]`` is folded into the error estimate.  The finite
part is refined by bisection with a 7-point Gauss / 15-point Kronrod pair.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .kernel import KernelParams, delta

__all__ = [
    "QuadConfig",
    "QuadResult",
    "DivergenceFit",
    "QuadratureError",
    "gauss_kronrod_15",
    "integrate_semi_infinite",
    "divergence_scan",
]

# Kronrod abscissae (positive half) and weights, Gauss-7 weights on the
# even-indexed abscissae.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
WEIGHTS_K = np.concatenate([_WK[:-1], _WK[::-1]])
WEIGHTS_G = np.zeros(15)
WEIGHTS_G[1:7:2] = _WG[:3]
WEIGHTS_G[7] = _WG[3]
WEIGHTS_G[9:15:2] = _WG[2::-1]

_EPS = np.finfo(float).eps
_TAIL_EXPONENT = 60.0


class QuadratureError(RuntimeError):
    """Raised when a caller needs a converged integral and did not get one."""


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 40
    # lower bound on the cut point T; None lets the integrator choose
    tail_cut: float | None = None

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_depth < 10:
            raise ValueError("max_depth must be at least 10")


@dataclass
class QuadResult:
    value: float
    err_estimate: float
    converged: bool
    evaluations: int
    cut: float = math.inf


@dataclass
class DivergenceFit:
    """Least-squares fit ``I(eps) ~ intercept + slope*ln(1/eps) + linear*eps``."""

    slope: float
    intercept: float
    residual: float
    epsilons: list = field(default_factory=list)
    values: list = field(default_factory=list)
    linear: float = 0.0


def gauss_kronrod_15(f, lo, hi):
    """Apply the G7/K15 pair on each panel ``[lo[i], hi[i]]``.

    Returns ``(kronrod, |kronrod - gauss|, kronrod of |f|)`` arrays.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    half = 0.5 * (hi - lo)
    centre = 0.5 * (hi + lo)
    pts = centre[:, None] + half[:, None] * NODES[None, :]
    vals = np.asarray(f(pts), dtype=float).reshape(pts.shape)
    k = half * (vals @ WEIGHTS_K)
    g = half * (vals @ WEIGHTS_G)
    resabs = np.abs(half) * (np.abs(vals) @ WEIGHTS_K)
    return k, np.abs(k - g), resabs


def _choose_cut(weight, x, lower, cfg, scale):
    cut = max(_TAIL_EXPONENT / x, lower + 1.0)
    if scale is not None:
        cut = max(cut, _TAIL_EXPONENT / scale)
    if cfg.tail_cut is not None:
        cut = max(cut, cfg.tail_cut)
    probe = np.linspace(0.0, 1.0, 17)
    for _ in range(60):
        with np.errstate(all="ignore"):
            m = float(np.max(np.abs(weight(cut + probe))))
        bound = m * math.exp(-x * cut) / x
        if np.isfinite(bound) and bound < cfg.abs_tol / 10:
            return cut, bound
        cut *= 1.25
    return cut, bound


def integrate_semi_infinite(weight, x, cfg=None, lower=0.0, scale=None):
    """Integrate ``weight(t) * exp(-x t)`` over ``(lower, inf)``.

    ``weight`` must accept a numpy array of abscissae.  ``scale`` is an
    optional characteristic rate of the weight (e.g. alpha for the Binet
    kernel); the cut point is kept beyond ``60/scale`` as well as ``60/x``.
    Panels are processed in a fixed order so results are reproducible.
    """
    cfg = cfg or QuadConfig()
    x = float(x)
    if not x > 0:
        raise ValueError(f"decay rate x must be positive, got {x!r}")
    lower = float(lower)
    cut, tail = _choose_cut(weight, x, lower, cfg, scale)

    def f(t):
        return weight(t) * np.exp(-x * t)

    if lower > 0 and cut / lower > 64:
        edges = np.geomspace(lower, cut, int(math.ceil(math.log2(cut / lower))) + 1)
    else:
        edges = np.linspace(lower, cut, 17)
    lo, hi = edges[:-1], edges[1:]
    depth = np.zeros(lo.size, dtype=int)
    val, err, floor = gauss_kronrod_15(f, lo, hi)
    floor = 50 * _EPS * floor
    evaluations = 15 * lo.size
    converged = False
    while True:
        total_err = math.fsum(np.maximum(err, floor)) + tail
        value = math.fsum(val)
        target = max(cfg.abs_tol, cfg.rel_tol * abs(value))
        if total_err <= target:
            converged = True
            break
        # split every panel above its even share that can still improve
        split = (err > target / lo.size) & (err > floor) & (depth < cfg.max_depth)
        if not np.any(split):
            break
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        v2, e2, a2 = gauss_kronrod_15(f, new_lo, new_hi)
        evaluations += 15 * new_lo.size
        keep = ~split
        d = depth[split] + 1
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        depth = np.concatenate([depth[keep], d, d])
        val = np.concatenate([val[keep], v2])
        err = np.concatenate([err[keep], e2])
        floor = np.concatenate([floor[keep], 50 * _EPS * a2])
        order = np.argsort(lo, kind="stable")
        lo, hi, depth, val, err, floor = lo[order], hi[order], depth[order], val[order], err[order], floor[order]

    err_total = math.fsum(np.maximum(err, floor)) + tail
    return QuadResult(value=value, err_estimate=err_total, converged=converged, evaluations=evaluations, cut=cut)


def divergence_scan(params, x, epsilons, cfg=None):
    """Fit the growth of ``I(eps) = int_eps^inf delta_{a,b}(t) e^{-xt}/t dt``.

    As eps -> 0 the integral behaves like ``C + ((a+b)/2) ln(1/eps) + c1 eps``;
    the slope of the fit estimates the coefficient of the logarithm.  The
    largest epsilon is dropped when five or more are given, and a linear
    nuisance term absorbs the first-order drift of the finite part.
    """
    cfg = cfg or QuadConfig()
    eps = sorted((float(e) for e in epsilons), reverse=True)
    if len(eps) < 4:
        raise ValueError("divergence_scan needs at least four epsilons")
    if len(set(eps)) != len(eps):
        raise ValueError("epsilons must be distinct")
    if eps[0] > 0.1 or eps[-1] <= 0:
        raise ValueError("epsilons must lie in (0, 0.1]")
    if math.log10(eps[0] / eps[-1]) < 3 - 1e-9:
        raise ValueError("epsilons must span at least three decades")
    if not isinstance(params, KernelParams):
        params = KernelParams(*params)

    def weight(t):
        return delta(params, t) / t

    values = []
    for e in eps:
        res = integrate_semi_infinite(weight, x, cfg, lower=e, scale=abs(params.span))
        if not res.converged:
            raise QuadratureError(f"truncated integral did not converge at eps={e!r} (err={res.err_estimate:.3g})")
        values.append(res.value)

    n_fit = max(4, len(eps) - 1)
    fe = np.array(eps[-n_fit:])
    fv = np.array(values[-n_fit:])
    design = np.column_stack([np.ones_like(fe), np.log(1.0 / fe), fe])
    coef, *_ = np.linalg.lstsq(design, fv, rcond=None)
    resid = float(np.max(np.abs(design @ coef - fv)))
    return DivergenceFit(
        slope=float(coef[1]),
        intercept=float(coef[0]),
        residual=resid,
        epsilons=list(fe),
        values=list(fv),
        linear=float(coef[2]),
    )
