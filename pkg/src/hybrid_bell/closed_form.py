"""Analytic expectation values and Bell functions.

All exponentials of the form ``exp(-a) * sinh(y)`` are evaluated as
differences of single exponentials, ``(exp(y - a) - exp(-y - a)) / 2``,
so large amplitudes never overflow.
"""
from __future__ import annotations

import math

from . import kernels
from .types import DisplacementSetting, EfficiencyPair, MeasurementSettings, QubitSetting, Scheme

PERFECT = EfficiencyPair(1.0, 1.0)


def _alpha(alpha) -> float:
    a = float(getattr(alpha, "alpha", alpha))
    if a < 0.0:
        raise ValueError("alpha must be non-negative (absorb its phase into beta)")
    return a


def _exp_sinh(y: float, a: float) -> float:
    return 0.5 * (math.exp(y - a) - math.exp(-y - a))


def expectation_ideal(scheme, alpha, xi: QubitSetting, beta: DisplacementSetting) -> float:
    """Joint correlation with perfect detectors on both sides."""
    scheme = Scheme.parse(scheme)
    a = _alpha(alpha)
    th, ph = xi.theta, xi.phi
    b, big_phi = beta.magnitude, beta.phase
    if scheme is Scheme.ONOFF:
        damp = a * a + b * b
        return (
            2.0 * math.cos(th) * _exp_sinh(2.0 * a * b * math.cos(big_phi), damp)
            + 2.0 * math.sin(th) * math.exp(-damp) * math.cos(2.0 * a * b * math.sin(big_phi) - ph)
            - math.sin(th) * math.exp(-2.0 * a * a) * math.cos(ph)
        )
    return (
        math.cos(th) * _exp_sinh(4.0 * a * b * math.cos(big_phi), 2.0 * (a * a + b * b))
        + math.sin(th) * math.exp(-2.0 * b * b) * math.cos(4.0 * a * b * math.sin(big_phi) - ph)
    )


def expectation_effective(
    scheme,
    alpha,
    xi: QubitSetting,
    beta: DisplacementSetting,
    effs: EfficiencyPair = PERFECT,
) -> float:
    """Joint correlation with lossy detectors; a missed polarization click counts as +1."""
    scheme = Scheme.parse(scheme)
    re, im = beta.cartesian
    return kernels.expectation(
        scheme.code, _alpha(alpha), xi.theta, xi.phi, re, im, effs.eta_A, effs.eta_B
    )


def joint_term(scheme, alpha, xi, beta, eta_B: float) -> float:
    """``<O_A (x) O_B,eff>`` for a perfect polarization detector."""
    return expectation_effective(scheme, alpha, xi, beta, EfficiencyPair(1.0, eta_B))


def marginal_term(scheme, alpha, beta, eta_B: float) -> float:
    """``Tr_B[O_B,eff rho_B]``: field-only average when the polarization photon is lost."""
    return expectation_effective(scheme, alpha, QubitSetting(0.0), beta, EfficiencyPair(0.0, eta_B))


def bell_value(alpha, settings: MeasurementSettings, effs: EfficiencyPair = PERFECT) -> float:
    """CHSH combination ``E11 + E12 + E22 - E21``."""
    return kernels.bell_general(
        settings.scheme.code, _alpha(alpha), effs.eta_A, effs.eta_B, settings.as_vector()
    )


def bell_value_ideal(alpha, settings: MeasurementSettings) -> float:
    s = settings.scheme
    e = lambda xi, beta: expectation_ideal(s, alpha, xi, beta)  # noqa: E731
    return (
        e(settings.xi1, settings.beta1)
        + e(settings.xi1, settings.beta2)
        + e(settings.xi2, settings.beta2)
        - e(settings.xi2, settings.beta1)
    )
