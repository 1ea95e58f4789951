import math

import pytest

from hybrid_bell import closed_form as cf
from hybrid_bell import roots


def test_onoff_small_alpha_limit():
    assert roots.solve_beta_onoff(0.0) == 0.0
    assert roots.solve_beta_onoff(1e-6) < 1e-5


def test_onoff_perfect_root():
    b = roots.solve_beta_onoff(0.664, 1.0)
    assert b == pytest.approx(0.478, abs=5e-4)
    assert abs(roots.onoff_condition_raw(b, 0.664, 1.0)) < 1e-12


@pytest.mark.parametrize("alpha", [0.05, 0.3, 0.664, 1.0, 2.0, 2.9])
@pytest.mark.parametrize("eta_B", [0.3, 0.5, 0.8, 1.0])
def test_onoff_residuals(alpha, eta_B):
    b = roots.solve_beta_onoff(alpha, eta_B)
    assert b > 0
    # the raw form grows like cosh(2 eta_B alpha beta); compare on the scaled form
    assert abs(roots.onoff_condition(b, alpha, eta_B)) < 1e-12
    y = 2 * eta_B * alpha * b
    assert abs(roots.onoff_condition_raw(b, alpha, eta_B)) < 1e-12 * math.cosh(y) * max(1.0, alpha)


def test_parity_small_alpha_limit():
    for a in (1e-3, 1e-2):
        assert roots.solve_beta_parity(a) == pytest.approx(a, rel=1e-3)


def test_parity_alpha_two():
    b = roots.solve_beta_parity(2.0, 1.0)
    assert b == pytest.approx(0.0924, abs=5e-4)
    assert math.tan(8 * b) == pytest.approx(0.912, abs=2e-3)


@pytest.mark.parametrize("alpha", [0.05, 0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("eta_B", [0.3, 0.8, 1.0])
def test_parity_residuals_and_branch(alpha, eta_B):
    b = roots.solve_beta_parity(alpha, eta_B)
    assert 0 < 4 * eta_B * alpha * b < math.pi / 2
    assert abs(roots.parity_condition(b, alpha, eta_B)) < 1e-12
    assert abs(roots.parity_tan_residual(b, alpha, eta_B)) < 1e-12


def test_bad_inputs():
    with pytest.raises(ValueError):
        roots.solve_beta_onoff(-1.0)
    with pytest.raises(ValueError):
        roots.solve_beta_parity(1.0, 0.0)


@pytest.mark.parametrize("scheme", ["onoff", "parity"])
@pytest.mark.parametrize("alpha", [0.1, 0.664, 1.5, 2.5])
@pytest.mark.parametrize("eta_B", [0.5, 0.75, 1.0])
def test_bell_max_formula_matches_settings(scheme, alpha, eta_B):
    s = roots.etaB_optimal_settings(scheme, alpha, eta_B)
    direct = cf.bell_value(alpha, s, cf.EfficiencyPair(1.0, eta_B))
    assert roots.bell_max_etaB(scheme, alpha, eta_B) == pytest.approx(direct, abs=1e-10)


def test_bell_max_examples():
    assert roots.bell_max_etaB("onoff", 0.664) == pytest.approx(2.61, abs=0.005)
    assert roots.bell_max_etaB("parity", 2.0) == pytest.approx(2.778, abs=0.005)


@pytest.mark.parametrize("scheme", ["onoff", "parity"])
def test_half_efficiency_never_violates(scheme):
    best = max(roots.bell_max_etaB(scheme, a / 100, 0.5) for a in range(1, 301))
    assert best == pytest.approx(2.0, abs=0.002)
