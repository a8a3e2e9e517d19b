"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also echoed in the pytest terminal summary, and running this
file directly (``python tests/test_acceptance.py``) prints them on their own.
"""

import math
import time

import numpy as np

from binetx.quad import QuadratureError
from binetx.remainder import theta_alpha_closed, theta_alpha_deriv, theta_alpha_quad
from binetx.special import digamma, polygamma
from binetx.verify import GridSpec, verify_remark_identities, verify_theorem1, verify_theorem2, verify_theorem3

RESULTS = []
GRID = GridSpec(samples=10_000, points=30, pairs=10, seed=0)


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _by_id(reports):
    return {r.claim_id: r for r in reports}


def _summ(reports, ids):
    bad = [f"{i}={reports[i].status}@{reports[i].worst_coordinates}" for i in ids if reports[i].status != "pass"]
    return not bad, bad


def test_criterion_1_extended_identity():
    start = time.perf_counter()
    worst, where = -math.inf, None
    for alpha in (0.25, 0.5, 1.0, 2.0, math.e, math.pi, 10.0):
        for x in np.geomspace(0.05, 50, 30):
            closed = theta_alpha_closed(alpha, x)
            q = theta_alpha_quad(alpha, x).value
            ratio = abs(q - closed) / max(1e-9, 1e-8 * abs(closed))
            if ratio > worst:
                worst, where = ratio, (alpha, x)
    elapsed = time.perf_counter() - start
    record(1, worst <= 1 and elapsed <= 30,
           f"210 points, worst |quad-closed|/tol = {worst:.3g} at alpha={where[0]:.4g}, x={where[1]:.4g}; "
           f"{elapsed:.2f} s")


def test_criterion_2_convergence_dichotomy():
    r = _by_id(verify_theorem1(GRID))
    div, con = r["thm1.divergence_slope"], r["thm1.convergent_slope"]
    ok = div.samples == 10 and con.samples == 10 and div.status == "pass" and con.status == "pass"
    record(2, ok, f"divergent slopes within 1% of (a+b)/2 (worst margin {div.worst_margin:.3g}); "
                  f"convergent |slope| <= 1e-6 (worst margin {con.worst_margin:.3g})")


def test_criterion_3_anchor_values():
    anchors = {1.0: 0.08106146679532726, 0.5: 0.15342640972002733}
    errs = []
    for x, v in anchors.items():
        res = theta_alpha_quad(1.0, x)
        errs.append((abs(theta_alpha_closed(1.0, x) - v), abs(res.value - v), res.converged))
    ok = all(c <= 1e-14 and q <= 1e-9 and conv for c, q, conv in errs)
    record(3, ok, "closed errors " + ", ".join(f"{c:.2g}" for c, _, _ in errs)
           + "; quadrature errors " + ", ".join(f"{q:.2g}" for _, q, _ in errs))


def test_criterion_4_theorem2_suite():
    r = _by_id(verify_theorem2(GRID))
    ids = ["thm2.delta_prime_positive", "thm2.delta_second_negative", "thm2.delta_second_positive",
           "thm2.monotone_scaling", "thm2.star_scaling", "thm2.star_scaling_reversed",
           "thm2.sharp_monotone_inf", "thm2.sharp_monotone_zero", "thm2.sharp_star"]
    ok, bad = _summ(r, ids)
    ok = ok and all(r[i].samples >= 10_000 for i in ids)
    record(4, ok, f"{len(ids)} claims at >= 10^4 samples" + (f"; failing: {bad}" if bad else ""))


def test_criterion_5_lazarevic_factor():
    r = _by_id(verify_theorem2(GridSpec(samples=1000, seed=0)))
    neg, quart = r["thm2.q_factor_negative"], r["thm2.q_factor_quartic"]
    ok = neg.status == "pass" and neg.samples == 1000 and quart.status == "pass"
    record(5, ok, f"Q < 0 on {neg.samples} samples; Q(1e-2)/1e-8 = {quart.worst_coordinates['ratio']:.10g}")


def test_criterion_6_theorem3_suite():
    reports = verify_theorem3(GRID)
    r = _by_id(reports)
    ids = [x.claim_id for x in reports if x.claim_id != "thm3.degenerate_p1q1"]
    ok, bad = _summ(r, ids)
    ok = ok and r["thm3.degenerate_p1q1"].ok and r["thm3.star_shaped"].samples == 10_000
    record(6, ok, f"{len(ids)} claims pass, p=q=1 degenerate" + (f"; failing: {bad}" if bad else ""))


def test_criterion_7_derivative_cross_validation():
    worst = 0.0
    formula_gap = 0.0
    for x in np.geomspace(0.2, 50, 40):
        for k in (1, 2):
            ev = theta_alpha_deriv(1.0, x, k, "both")
            worst = max(worst, ev.disagreement)
            ref = (digamma(x) - math.log(x) + 0.5 / x) if k == 1 else (polygamma(1, x) - 1 / x - 0.5 / x**2)
            formula_gap = max(formula_gap, abs(ev.closed - ref))
    spot = theta_alpha_deriv(1.0, 2.0, 1).closed
    spot_err = abs(spot - (-0.02036284546147817))
    ok = worst <= 1e-8 and formula_gap <= 1e-8 and spot_err <= 1e-10
    record(7, ok, f"max |closed-quad| = {worst:.3g}, max |closed-digamma form| = {formula_gap:.3g}, "
                  f"theta'(2) = {spot:.15g}")


def test_criterion_8_remark_equivalence():
    r = _by_id(verify_remark_identities(GRID, alphas=(0.5, 1.0, 3.0)))
    rep = r["remark.substituted_alpha_free"]
    record(8, rep.status == "pass", f"alpha-spread margin {rep.worst_margin:.3g} over 30 y-points (threshold 1e-9)")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except (AssertionError, QuadratureError):
                pass
