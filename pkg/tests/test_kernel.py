import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from binetx.kernel import (
    KernelParams,
    F_ab,
    delta,
    delta_limit_inf,
    delta_limit_zero,
    delta_prime,
    delta_prime_limit_zero,
    delta_second,
    delta_series,
    g_xy,
    q_factor,
)
from binetx.special import DomainError

from conftest import mp_delta, richardson

HALF = KernelParams(-0.5, 0.5)

pairs = st.tuples(st.floats(-4, 4), st.floats(-4, 4)).filter(lambda ab: abs(ab[0] - ab[1]) > 1e-2)


def test_params_accessors():
    p = KernelParams(3.0, -1.0)
    assert (p.span, p.mid, p.hi) == (-4.0, 1.0, 3.0)
    assert KernelParams.symmetric(2.0) == KernelParams(-1.0, 1.0)
    with pytest.raises(DomainError):
        KernelParams(1.0, 1.0)
    with pytest.raises(DomainError):
        KernelParams(float("nan"), 1.0)


def test_g_xy_values():
    assert g_xy(1, math.e, 0) == pytest.approx(1.0, rel=1e-15)
    assert g_xy(1, math.e, 1) == pytest.approx(math.e - 1, rel=1e-15)
    # (e^t - 1)/t = 1 + t/2 + t^2/6 + ...
    assert g_xy(1, math.e, 1e-9) == pytest.approx(1.0000000005, rel=1e-15)
    assert g_xy(2.0, 5.0, -1.5) == pytest.approx((5**-1.5 - 2**-1.5) / -1.5, rel=1e-14)
    with pytest.raises(DomainError):
        g_xy(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        g_xy(2.0, 1.0, 1.0)


def test_F_ab_values():
    assert F_ab(KernelParams(0, 1), 0) == 1.0
    assert F_ab(KernelParams(0, 2), 0) == 0.5
    assert F_ab(HALF, 1.0) == pytest.approx(0.9595173756674719, rel=1e-15)


@given(pairs, st.floats(-30, 30).filter(lambda t: t != 0))
@settings(max_examples=300, deadline=None)
def test_F_ab_is_reciprocal_of_g(ab, t):
    p = KernelParams(*ab)
    lo, hi = sorted(ab)
    g = g_xy(math.exp(lo), math.exp(hi), t)
    assert F_ab(p, t) * g == pytest.approx(math.copysign(1.0, p.span), rel=1e-13)


def test_F_ab_no_overflow():
    p = KernelParams(-1.0, 2.0)
    assert F_ab(p, 500.0) == pytest.approx(float(mp.mpf(500) / (mp.exp(1000) - mp.exp(-500))), rel=1e-13)
    assert F_ab(p, -500.0) == pytest.approx(float(mp.mpf(-500) / (mp.exp(-1000) - mp.exp(500))), rel=1e-13)


def test_delta_values():
    assert delta(HALF, 1.0) == pytest.approx(0.08197670686932643, rel=1e-14)
    assert delta(HALF, 1.0) == pytest.approx(1 / (math.e - 1) - 0.5, rel=1e-14)
    assert abs(delta(KernelParams(-1, 2), 100.0) - 1.99) <= 1e-12
    assert delta(KernelParams(1, 3), 1e-9) == pytest.approx(2.0, abs=1e-8)
    with pytest.raises(DomainError):
        delta(HALF, 0.0)


def test_delta_saturation():
    # far beyond exp overflow the value tends to max(a,b) - 1/t
    p = KernelParams(-1.0, 2.0)
    for t in (400.0, 1e3, 1e6):
        assert delta(p, t) == pytest.approx(2.0 - 1 / t, rel=1e-15)
        assert delta(p, -t) == pytest.approx(-1.0 + 1 / t, rel=1e-15)


def test_delta_against_mpmath():
    rng = np.random.default_rng(1)
    for _ in range(600):
        a, b = rng.uniform(-4, 4, 2)
        t = rng.choice([-1, 1]) * 10 ** rng.uniform(-6, 2.5)
        ref = float(mp_delta(a, b, t))
        scale = abs(ref) + abs(a) + abs(b)
        assert abs(delta(KernelParams(a, b), t) - ref) <= 1e-14 * scale


def test_delta_vectorised():
    t = np.array([-3.0, -0.1, 0.1, 3.0])
    v = delta(HALF, t)
    assert v.shape == (4,)
    np.testing.assert_allclose(v, [delta(HALF, s) for s in t], rtol=0, atol=0)


@given(pairs, st.floats(0.01, 40))
@settings(max_examples=200, deadline=None)
def test_delta_symmetric_in_parameters(ab, t):
    a, b = ab
    assert delta(KernelParams(a, b), t) == pytest.approx(delta(KernelParams(b, a), t), rel=1e-13, abs=1e-14)


def test_delta_series_values():
    assert delta_series(HALF, 0.0, 5) == 0.0
    t = 1e-3
    assert delta_series(HALF, t, 1) == pytest.approx(t / 12, rel=1e-15)
    assert delta_series(KernelParams(0, 2), 0.1, 8) == pytest.approx(delta(KernelParams(0, 2), 0.1), abs=1e-14)
    with pytest.raises(DomainError):
        delta_series(KernelParams(0, 2), 0.3, 8)


def test_removable_singularity_continuity():
    rng = np.random.default_rng(7)
    for _ in range(50):
        mid = rng.uniform(-2, 2)
        span = rng.uniform(0.1, 4.0)
        p = KernelParams(mid - span / 2, mid + span / 2)
        for t in (1e-8, -1e-8):
            assert abs(delta(p, t) - delta_series(p, t, 6)) <= 1e-13


def test_branch_overlap():
    # both branches agree where they meet
    for a, b in [(-0.5, 0.5), (1, 3), (-2, -0.5), (0, 4)]:
        p = KernelParams(a, b)
        t0 = 0.25 / abs(p.span)
        lo, hi = delta(p, np.nextafter(t0, 0)), delta(p, t0)
        assert lo == pytest.approx(hi, rel=1e-14, abs=1e-15)


def test_log_derivative_relation():
    # delta = d/dt ln g_{e^a,e^b}(t) = -d/dt ln F_{a,b}(t)
    for a, b in [(-0.5, 0.5), (0.2, 1.1), (-3, -1), (1, 3)]:
        p = KernelParams(a, b)
        for t in np.concatenate([np.linspace(-5, -0.05, 12), np.linspace(0.05, 5, 12)]):
            d_lng = richardson(lambda s: math.log(g_xy(math.exp(min(a, b)), math.exp(max(a, b)), s)), t, 1e-3)
            d_lnf = richardson(lambda s: math.log(F_ab(p, s)), t, 1e-3)
            assert abs(delta(p, t) - d_lng) <= 1e-8
            assert abs(delta(p, t) + d_lnf) <= 1e-8


def test_delta_prime_values():
    assert delta_prime(HALF, 1.0) == pytest.approx(1 - math.e / (math.e - 1) ** 2, rel=1e-14)
    assert delta_prime(HALF, 1e-7) == pytest.approx(1 / 12, rel=1e-12)
    assert delta_prime_limit_zero(HALF) == 1 / 12
    assert delta_prime(KernelParams(0, 1), 1e4) == pytest.approx(1e-8, rel=1e-12)
    with pytest.raises(DomainError):
        delta_prime(HALF, 0.0)


def test_eq6_identity():
    # delta'_{-1/2,1/2}(t) = 1/t^2 - e^{-t}/(1 - e^{-t})^2, reference in 40 digits
    for t in np.geomspace(1e-3, 30, 200):
        tt = mp.mpf(t)
        ref = float(1 / tt**2 - mp.exp(-tt) / (1 - mp.exp(-tt)) ** 2)
        assert delta_prime(HALF, t) == pytest.approx(ref, rel=1e-12)


def test_delta_prime_matches_finite_difference():
    for a, b in [(-0.5, 0.5), (1, 3), (-2, 0.5)]:
        p = KernelParams(a, b)
        for t in (-4.0, -0.7, 0.3, 1.0, 6.0):
            assert delta_prime(p, t) == pytest.approx(richardson(lambda s: delta(p, s), t, 1e-3), rel=1e-8)


def test_delta_second_values():
    # Richardson finite difference of delta_prime
    fd = richardson(lambda s: delta_prime(HALF, s), 1.0, 1e-3)
    assert delta_second(HALF, 1.0) == pytest.approx(fd, rel=1e-8)
    assert delta_second(HALF, 1.0) == pytest.approx(-0.007705232875012607, rel=1e-13)
    assert delta_second(HALF, -1.0) == pytest.approx(0.007705232875012607, rel=1e-13)
    assert delta_second(KernelParams(1, 3), 0.5) == pytest.approx(-0.061641863000100855, rel=1e-13)
    with pytest.raises(DomainError):
        delta_second(HALF, 0.0)


def test_derivatives_against_mpmath():
    rng = np.random.default_rng(3)
    for _ in range(300):
        a, b = rng.uniform(-4, 4, 2)
        t = rng.choice([-1, 1]) * 10 ** rng.uniform(-5, 2)
        p = KernelParams(a, b)
        d1 = float(mp.diff(lambda s: mp_delta(a, b, s), t))
        d2 = float(mp.diff(lambda s: mp_delta(a, b, s), t, 2))
        assert delta_prime(p, t) == pytest.approx(d1, rel=1e-13)
        assert delta_second(p, t) == pytest.approx(d2, rel=1e-12)


@given(pairs)
@settings(max_examples=200, deadline=None)
def test_sign_laws(ab):
    p = KernelParams(*ab)
    t = np.geomspace(1e-3, 50, 200)
    assert np.all(delta_prime(p, t) > 0)
    assert np.all(delta_second(p, t) < 0)
    assert np.all(delta_second(p, -t) > 0)


@given(pairs)
@settings(max_examples=200, deadline=None)
def test_limits(ab):
    p = KernelParams(*ab)
    assert abs(delta(p, 1e-7) - delta_limit_zero(p)) <= 1e-6 * (1 + abs(p.mid))
    t = 200 / abs(p.span)
    # the approach to max(a,b) is algebraic: delta = max(a,b) - 1/t + O(e^{-|span| t})
    assert abs(delta(p, t) - (delta_limit_inf(p) - 1 / t)) <= 1e-4 * max(1.0, abs(p.span))
    assert abs(delta(p, t) - delta_limit_inf(p)) <= 1 / t + 1e-12


def test_q_factor_values():
    assert q_factor(1.0) == pytest.approx(-0.0799872018043806, rel=1e-14)
    assert q_factor(-1.0) == q_factor(1.0)
    # cosh t - (sinh t/t)^3 = -t^4/15 + O(t^6)
    assert q_factor(1e-4) == pytest.approx(-6.6666666788359785e-18, rel=1e-12)
    with pytest.raises(DomainError):
        q_factor(0.0)


def test_q_factor_negative_and_quartic():
    t = np.geomspace(1e-3, 30, 500)
    assert np.all(q_factor(t) < 0) and np.all(q_factor(-t) < 0)
    assert abs(q_factor(1e-2) / 1e-8 + 1 / 15) <= 0.01 / 15
    for s in np.geomspace(1e-3, 5, 40):
        ref = float(mp.cosh(s) - (mp.sinh(s) / s) ** 3)
        assert q_factor(s) == pytest.approx(ref, rel=1e-13)


@given(pairs, st.floats(0.01, 50), st.floats(0.05, 0.95))
@settings(max_examples=300, deadline=None)
def test_inequality_11(ab, t, tau):
    p = KernelParams(*ab)
    assert delta(p, tau * t) < delta(p, t)


@given(st.floats(0.0, 3.0), st.floats(0.25, 4.0), st.floats(0.01, 50), st.floats(0.05, 0.95))
@settings(max_examples=300, deadline=None)
def test_inequality_12_and_reversal(mid, span, t, tau):
    p = KernelParams(mid - span / 2, mid + span / 2)
    assert tau * delta(p, t) < delta(p, tau * t)
    # shift so that max(a, b) = -mid <= 0
    r = KernelParams(-mid - span, -mid)
    assert tau * delta(r, t) > delta(r, tau * t)


@pytest.mark.parametrize("a, b", [(-1.5, 1.5), (1.0, 3.0), (-2.0, -0.5), (0.5, -0.5)])
def test_delta_relative_accuracy(a, b):
    # the series/closed-form hand-over must not leak cancellation error
    params = KernelParams(a, b)
    t = np.geomspace(1e-5, 40 / abs(b - a), 400)
    got = delta(params, t)
    ref = np.array([float(mp_delta(a, b, v)) for v in t])
    assert np.max(np.abs(got - ref) / np.abs(ref)) <= 2e-15
