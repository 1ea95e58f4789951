import math

import numpy as np
import pytest
from scipy.optimize import minimize

from hybrid_bell import kernels
from hybrid_bell._pykernels import ONOFF, PARITY, REAL, IMAG, GENERAL

BACKENDS = kernels.backends()


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


@pytest.mark.skipif("compiled" not in BACKENDS, reason="compiled backend not built")
@pytest.mark.parametrize("scheme", [ONOFF, PARITY])
def test_backends_agree_pointwise(scheme, rng):
    py, c = BACKENDS["python"], BACKENDS["compiled"]
    for _ in range(200):
        a, th, ph, re, im, ea, eb = rng.uniform([0, -4, -4, -2, -2, 0, 0], [3, 4, 4, 2, 2, 1, 1])
        assert c.expectation(scheme, a, th, ph, re, im, ea, eb) == pytest.approx(
            py.expectation(scheme, a, th, ph, re, im, ea, eb), abs=1e-15
        )
        x8 = list(rng.uniform(-2, 2, 8))
        assert c.bell_general(scheme, a, ea, eb, x8) == pytest.approx(py.bell_general(scheme, a, ea, eb, x8), abs=1e-14)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="compiled backend not built")
@pytest.mark.parametrize("regime,scheme", [(REAL, ONOFF), (REAL, PARITY), (IMAG, PARITY)])
def test_backends_follow_same_simplex(regime, scheme):
    args = (regime, scheme, 0.458, 0.8, 0.8, [1.5, 0.3, -0.5, 0.2], [0.1, 0.1, 0.05, 0.05], 1e-9, 1e-12, 2000)
    xp, vp, np_ = BACKENDS["python"].nelder_mead_max(*args)
    xc, vc, nc = BACKENDS["compiled"].nelder_mead_max(*args)
    assert np_ == nc
    assert vp == pytest.approx(vc, abs=1e-13)
    assert np.allclose(xp, xc, atol=1e-10)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_regime_expansion_matches_general(name):
    k = BACKENDS[name]
    a, ea, eb = 0.7, 0.9, 0.8
    t1, t2, b1, b2 = 1.2, 0.3, -0.4, 0.25
    assert k.bell_regime(REAL, ONOFF, a, ea, eb, [t1, t2, b1, b2]) == pytest.approx(
        k.bell_general(ONOFF, a, ea, eb, [t1, 0, t2, 0, b1, 0, b2, 0]), abs=1e-15
    )
    p1, p2 = 0.2, 1.4
    assert k.bell_regime(IMAG, PARITY, a, ea, eb, [p1, p2, b1, b2]) == pytest.approx(
        k.bell_general(PARITY, a, ea, eb, [math.pi / 2, p1, math.pi / 2, p2, 0, b1, 0, b2]), abs=1e-15
    )
    x8 = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    assert k.bell_regime(GENERAL, PARITY, a, ea, eb, x8) == k.bell_general(PARITY, a, ea, eb, x8)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_simplex_matches_scipy_on_smooth_function(name):
    # maximize the on/off Bell function in the real regime; scipy minimizes -B
    k = BACKENDS[name]
    x0 = [1.5, 0.3, -0.5, 0.5]
    x, v, _ = k.nelder_mead_max(REAL, ONOFF, 0.664, 1.0, 1.0, x0, [0.1, 0.1, 0.05, 0.05], 1e-10, 1e-13, 4000)
    ref = minimize(
        lambda p: -k.bell_regime(REAL, ONOFF, 0.664, 1.0, 1.0, list(p)),
        x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-13, "maxfev": 4000},
    )
    assert v == pytest.approx(-ref.fun, abs=1e-9)
    assert v == pytest.approx(2.6092, abs=1e-3)


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = {**os.environ, "HYBRID_BELL_PURE_PYTHON": "1"}
    code = "import hybrid_bell as h; print(h.BACKEND, round(h.maximize_bell('onoff', 0.664).value, 6))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    assert out.split() == ["python", "2.609216"]
