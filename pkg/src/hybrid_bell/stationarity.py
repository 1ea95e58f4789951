"""First-order optimality systems for the reduced parameterizations.

Each system is written in root form (tangent conditions cross-multiplied,
the ``(1 - eta_A)/eta_A`` terms multiplied through by ``eta_A``) so no
equation divides by a quantity that can vanish.  Magnitudes are signed:
``beta1 = -b1`` and ``beta2 = b2`` in terms of the regime parameters, which
matches the sign pattern ``beta1 = -beta2`` of the perfect-detector optima.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import RegimeMismatchError
from .regimes import check_regime, n_params
from .types import EfficiencyPair, Regime, Scheme


def _real_system(alpha, eta_A, eta_B, params, k, g, offset):
    """Shared structure of the on/off and parity region-I systems.

    ``k`` is the field scale (2 for on/off, 4 for parity); ``g`` the
    coherence factor; ``offset`` the extra term of the first tangent
    condition (present for on/off only).
    """
    t1, t2, b1, b2 = params
    be1, be2 = -b1, b2
    damp = 0.5 * k * eta_B
    e1 = math.exp(-damp * be1 * be1)
    e2 = math.exp(-damp * be2 * be2)
    y1 = k * eta_B * alpha * be1
    y2 = k * eta_B * alpha * be2
    s1 = e1 * math.sinh(y1)
    s2 = e2 * math.sinh(y2)
    c1, c2 = math.cos(t1), math.cos(t2)
    n1, n2 = math.sin(t1), math.sin(t2)
    return np.array([
        n1 * (s1 - s2) - c1 * g * (offset - e1 - e2),
        n2 * (s1 + s2) + c2 * g * (e1 - e2),
        (be1 * math.sinh(y1) - alpha * math.cosh(y1)) * (c1 - c2) - g * be1 * (n1 - n2),
        eta_A * ((-be2 * math.sinh(y2) + alpha * math.cosh(y2)) * (c1 + c2) - g * be2 * (n1 + n2))
        + 2.0 * (1.0 - eta_A) * (-be2 * math.cosh(y2) + alpha * math.sinh(y2)),
    ])


def _onoff_real(alpha, eta_A, eta_B, params):
    g = math.exp(-2.0 * (1.0 - eta_B) * alpha * alpha)
    return _real_system(alpha, eta_A, eta_B, params, 2.0, g, math.exp(-eta_B * alpha * alpha))


def _parity_region_i(alpha, eta_A, eta_B, params):
    g = math.exp(-2.0 * (1.0 - 2.0 * eta_B) * alpha * alpha)
    return _real_system(alpha, eta_A, eta_B, params, 4.0, g, 0.0)


def _parity_region_ii(alpha, eta_A, eta_B, params):
    p1, p2, b1, b2 = params
    be1, be2 = -b1, b2
    e1 = math.exp(-2.0 * eta_B * be1 * be1)
    e2 = math.exp(-2.0 * eta_B * be2 * be2)
    x1 = 4.0 * eta_B * alpha * be1
    x2 = 4.0 * eta_B * alpha * be2
    return np.array([
        e1 * math.sin(x1 + p1) - e2 * math.sin(x2 - p1),
        e1 * math.sin(x1 + p2) + e2 * math.sin(x2 - p2),
        be1 * (math.cos(x1 + p1) - math.cos(x1 + p2)) + alpha * (math.sin(x1 + p1) - math.sin(x1 + p2)),
        eta_A * math.exp(-2.0 * (1.0 - 2.0 * eta_B) * alpha * alpha)
        * (be2 * (math.cos(x2 - p1) + math.cos(x2 - p2)) + alpha * (math.sin(x2 - p1) + math.sin(x2 - p2)))
        + 2.0 * (1.0 - eta_A) * be2,
    ])


_SYSTEMS = {
    Regime.ONOFF_REAL: _onoff_real,
    Regime.PARITY_REGION_I: _parity_region_i,
    Regime.PARITY_REGION_II: _parity_region_ii,
}


def stationarity_residuals(scheme, regime, params, alpha: float, effs: EfficiencyPair) -> np.ndarray:
    """Left-minus-right residuals of the regime's four optimality equations."""
    scheme = Scheme.parse(scheme)
    regime = Regime(regime)
    if regime not in _SYSTEMS:
        raise RegimeMismatchError(f"no stationarity system for regime {regime.value}")
    check_regime(scheme, regime)
    if len(params) != n_params(regime):
        raise RegimeMismatchError(f"{regime.value} takes 4 parameters")
    return _SYSTEMS[regime](float(alpha), effs.eta_A, effs.eta_B, [float(v) for v in params])


def has_system(regime: Regime) -> bool:
    return regime in _SYSTEMS
