import math

import pytest
from hypothesis import given, settings, strategies as st

from hybrid_bell import closed_form as cf
from hybrid_bell.types import DisplacementSetting, EfficiencyPair, MeasurementSettings, QubitSetting, Scheme

from conftest import CIRELSON, random_effs, random_settings

ang = st.floats(-10, 10, allow_nan=False)
amp = st.floats(0, 3, allow_nan=False)
eff = st.floats(0, 1, allow_nan=False)
schemes = st.sampled_from(list(Scheme))


def test_ideal_examples():
    assert cf.expectation_ideal("onoff", 0.0, QubitSetting(math.pi / 2), DisplacementSetting(0)) == pytest.approx(1.0)
    for phi in (0.0, 1.3, 4.0):
        assert cf.expectation_ideal("parity", 0.9, QubitSetting(0.0, phi), DisplacementSetting(0)) == 0.0
    for a in (0.0, 0.4, 2.5):
        assert cf.expectation_ideal("parity", a, QubitSetting(math.pi / 2), DisplacementSetting(0)) == pytest.approx(1.0)


@pytest.mark.parametrize("alpha", [0.0, 0.3, 1.2])
@pytest.mark.parametrize("eta_B", [0.0, 0.4, 1.0])
def test_marginal_examples(alpha, eta_B):
    x, b, e = QubitSetting(1.0, 0.5), DisplacementSetting(0.0), EfficiencyPair(0.0, eta_B)
    assert cf.expectation_effective("onoff", alpha, x, b, e) == pytest.approx(2 * math.exp(-eta_B * alpha**2) - 1, abs=1e-15)
    assert cf.expectation_effective("parity", alpha, x, b, e) == pytest.approx(math.exp(-2 * eta_B * alpha**2), abs=1e-15)


@settings(max_examples=300, deadline=None)
@given(schemes, amp, ang, ang, amp, ang)
def test_effective_reduces_to_ideal(scheme, a, th, ph, b, bp):
    x, d = QubitSetting(th, ph), DisplacementSetting(b, bp)
    assert cf.expectation_effective(scheme, a, x, d) == pytest.approx(cf.expectation_ideal(scheme, a, x, d), abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(schemes, amp, ang, ang, amp, ang, eff, eff)
def test_affine_in_eta_A(scheme, a, th, ph, b, bp, ea, eb):
    x, d = QubitSetting(th, ph), DisplacementSetting(b, bp)
    e = lambda v: cf.expectation_effective(scheme, a, x, d, EfficiencyPair(v, eb))  # noqa: E731
    assert e(ea) == pytest.approx(ea * e(1.0) + (1 - ea) * e(0.0), abs=1e-12)
    assert e(1.0) == pytest.approx(cf.joint_term(scheme, a, x, d, eb), abs=0)
    assert e(0.0) == pytest.approx(cf.marginal_term(scheme, a, d, eb), abs=0)


@settings(max_examples=300, deadline=None)
@given(schemes, amp, ang, ang, amp, ang, eff, eff)
def test_expectation_bounded(scheme, a, th, ph, b, bp, ea, eb):
    v = cf.expectation_effective(scheme, a, QubitSetting(th, ph), DisplacementSetting(b, bp), EfficiencyPair(ea, eb))
    assert abs(v) <= 1 + 1e-12


def test_large_amplitude_no_overflow():
    x, d = QubitSetting(0.3), DisplacementSetting(30.0)
    for s in Scheme:
        v = cf.expectation_effective(s, 30.0, x, d, EfficiencyPair(0.9, 0.9))
        assert math.isfinite(v) and abs(v) <= 1
        assert math.isfinite(cf.expectation_ideal(s, 30.0, x, d))


def test_angle_wrapping():
    a, d = 0.7, DisplacementSetting(0.4, 0.3)
    v = cf.expectation_ideal("onoff", a, QubitSetting(1.1, 0.4), d)
    assert cf.expectation_ideal("onoff", a, QubitSetting(1.1 + 2 * math.pi, 0.4 - 4 * math.pi), d) == pytest.approx(v, abs=1e-12)
    assert cf.expectation_ideal("onoff", a, QubitSetting(-1.1, 0.4 + math.pi), d) == pytest.approx(v, abs=1e-12)
    assert DisplacementSetting(-0.4, 0.3) == DisplacementSetting(0.4, 0.3 + math.pi)


def _real_setting_onoff(a, t, b, eta_A, eta_B):
    # real-setting reduction with the sign of the displacement carried by b
    y = 2 * eta_B * a * abs(b)
    sgn = -1.0 if b < 0 else 1.0
    ex = math.exp(-eta_B * (a * a + b * b))
    joint = (
        -2 * sgn * math.cos(t) * ex * math.sinh(y)
        + 2 * math.sin(t) * ex * math.exp(-2 * (1 - eta_B) * a * a)
        - math.sin(t) * math.exp(-2 * a * a)
    )
    marg = 2 * ex * math.cosh(y) - 1
    return eta_A * joint + (1 - eta_A) * marg


@pytest.mark.parametrize("b", [-0.6, -0.2, 0.0, 0.3, 0.9])
def test_real_setting_specialization(b, rng):
    for _ in range(10):
        a, t = rng.uniform(0, 1.5), rng.uniform(-math.pi, math.pi)
        ea, eb = rng.uniform(0, 1, 2)
        got = cf.expectation_effective("onoff", a, QubitSetting(t), DisplacementSetting(b), EfficiencyPair(ea, eb))
        # joint sign convention: the displacement toward -alpha lowers the click rate
        ref = _real_setting_onoff(a, t, -b, ea, eb)
        assert got == pytest.approx(ref, abs=1e-12)


def test_bell_value_examples():
    s16 = MeasurementSettings(
        QubitSetting(math.pi / 2), QubitSetting(0.0),
        DisplacementSetting(0.478, math.pi), DisplacementSetting(0.478), "onoff",
    )
    assert cf.bell_value(0.664, s16) == pytest.approx(2.61, abs=0.005)
    s18 = MeasurementSettings(
        QubitSetting(math.pi / 2), QubitSetting(math.pi / 2, math.pi / 2),
        DisplacementSetting(0.0924, 1.5 * math.pi), DisplacementSetting(0.0924, 0.5 * math.pi), "parity",
    )
    assert cf.bell_value(2.0, s18) == pytest.approx(2.778, abs=0.005)


def test_bell_value_equal_settings(rng):
    for _ in range(50):
        s = random_settings(rng, Scheme.ONOFF)
        same = MeasurementSettings(s.xi1, s.xi1, s.beta1, s.beta1, s.scheme)
        e = random_effs(rng)
        a = rng.uniform(0, 2)
        assert cf.bell_value(a, same, e) == pytest.approx(2 * cf.expectation_effective(s.scheme, a, s.xi1, s.beta1, e), abs=1e-14)


def test_bell_value_ideal_matches_effective(rng):
    for _ in range(50):
        s = random_settings(rng, Scheme.PARITY if rng.random() < 0.5 else Scheme.ONOFF)
        a = rng.uniform(0, 2)
        assert cf.bell_value(a, s) == pytest.approx(cf.bell_value_ideal(a, s), abs=1e-12)


def test_cirelson_fuzz_closed_form(rng):
    for _ in range(1000):
        s = random_settings(rng, Scheme.PARITY if rng.random() < 0.5 else Scheme.ONOFF, max_amp=3.0)
        assert abs(cf.bell_value(rng.uniform(0, 5), s, random_effs(rng))) <= CIRELSON + 1e-9


def test_negative_alpha_rejected():
    with pytest.raises(ValueError):
        cf.expectation_ideal("onoff", -0.1, QubitSetting(0.0), DisplacementSetting(0.0))
