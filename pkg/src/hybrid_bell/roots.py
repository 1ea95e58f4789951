"""Optimal displacement magnitudes when only the field detector is lossy.

Both conditions are solved by plain bisection on a sign-changing bracket.
"""
from __future__ import annotations

import math

from scipy.optimize import bisect

from .errors import NoBracketError
from .types import DisplacementSetting, MeasurementSettings, QubitSetting, Scheme

XTOL = 1e-15
RTOL = 4 * 2.220446049250313e-16


def _check(alpha: float, eta_B: float) -> None:
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if not 0.0 < eta_B <= 1.0:
        raise ValueError(f"eta_B={eta_B} outside (0, 1]")


def onoff_condition(beta: float, alpha: float, eta_B: float) -> float:
    """On/off stationarity condition divided by ``cosh(2 eta_B alpha beta)``.

    Zero exactly where
    ``beta exp(-2(1-eta_B) alpha^2) + beta sinh(y) - alpha cosh(y) = 0``,
    ``y = 2 eta_B alpha beta``.
    """
    y = 2.0 * eta_B * alpha * beta
    g = math.exp(-2.0 * (1.0 - eta_B) * alpha * alpha)
    return beta * g / math.cosh(y) + beta * math.tanh(y) - alpha


def onoff_condition_raw(beta: float, alpha: float, eta_B: float) -> float:
    y = 2.0 * eta_B * alpha * beta
    g = math.exp(-2.0 * (1.0 - eta_B) * alpha * alpha)
    return beta * g + beta * math.sinh(y) - alpha * math.cosh(y)


def solve_beta_onoff(alpha: float, eta_B: float = 1.0) -> float:
    """Positive root of the on/off condition; 0 at ``alpha = 0``."""
    _check(alpha, eta_B)
    if alpha == 0.0:
        return 0.0
    hi = alpha + 1.0
    while onoff_condition(hi, alpha, eta_B) <= 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise NoBracketError(f"no on/off root for alpha={alpha}, eta_B={eta_B}")
    return bisect(onoff_condition, 0.0, hi, args=(alpha, eta_B), xtol=XTOL, rtol=RTOL, maxiter=400)


def parity_condition(beta: float, alpha: float, eta_B: float) -> float:
    """Cross-multiplied tangent condition, ``sin(x)(a+b) - cos(x)(a-b)`` with ``x = 4 eta_B a b``."""
    x = 4.0 * eta_B * alpha * beta
    return math.sin(x) * (alpha + beta) - math.cos(x) * (alpha - beta)


def parity_tan_residual(beta: float, alpha: float, eta_B: float) -> float:
    return math.tan(4.0 * eta_B * alpha * beta) - (alpha - beta) / (alpha + beta)


def solve_beta_parity(alpha: float, eta_B: float = 1.0) -> float:
    """Root of ``tan(4 eta_B a b) = (a - b)/(a + b)`` nearest to zero.

    The search is confined to ``4 eta_B a b`` in ``(0, pi/2)``, where the
    tangent rises from 0 while the right-hand side falls from 1.
    """
    _check(alpha, eta_B)
    if alpha == 0.0:
        return 0.0
    hi = math.pi / (8.0 * eta_B * alpha)
    return bisect(parity_condition, 0.0, hi, args=(alpha, eta_B), xtol=XTOL, rtol=RTOL, maxiter=400)


def solve_beta(scheme, alpha: float, eta_B: float = 1.0) -> float:
    scheme = Scheme.parse(scheme)
    return solve_beta_onoff(alpha, eta_B) if scheme is Scheme.ONOFF else solve_beta_parity(alpha, eta_B)


def etaB_optimal_settings(scheme, alpha: float, eta_B: float = 1.0) -> MeasurementSettings:
    """Closed-form optimal settings for a perfect polarization detector.

    On/off: ``xi1 = -pi/4, xi2 = 0, beta1 = -beta2 = -|beta|`` (real).
    Parity: ``xi1 = -pi/4, xi2 = i pi/4, beta1 = -beta2 = -i|beta|``.
    """
    scheme = Scheme.parse(scheme)
    b = solve_beta(scheme, alpha, eta_B)
    if scheme is Scheme.ONOFF:
        return MeasurementSettings(
            QubitSetting(math.pi / 2, 0.0),
            QubitSetting(0.0, 0.0),
            DisplacementSetting(b, math.pi),
            DisplacementSetting(b, 0.0),
            scheme,
        )
    return MeasurementSettings(
        QubitSetting(math.pi / 2, 0.0),
        QubitSetting(math.pi / 2, math.pi / 2),
        DisplacementSetting(b, 1.5 * math.pi),
        DisplacementSetting(b, 0.5 * math.pi),
        scheme,
    )


def bell_max_etaB(scheme, alpha: float, eta_B: float = 1.0) -> float:
    """Bell value at the closed-form optimum for ``eta_A = 1``."""
    scheme = Scheme.parse(scheme)
    b = solve_beta(scheme, alpha, eta_B)
    a2 = alpha * alpha
    if scheme is Scheme.ONOFF:
        y = 2.0 * eta_B * alpha * b
        damp = eta_B * (a2 + b * b)
        return (
            4.0 * math.exp(-damp - 2.0 * (1.0 - eta_B) * a2)
            + 2.0 * (math.exp(y - damp) - math.exp(-y - damp))
            - 2.0 * math.exp(-2.0 * a2)
        )
    x = 4.0 * eta_B * alpha * b
    return 2.0 * math.exp(-2.0 * (1.0 - eta_B) * a2 - 2.0 * eta_B * b * b) * (math.cos(x) + math.sin(x))
