"""Reduced parameterizations of the four local settings.

``REAL``    (theta1, theta2, b1, b2): phi = 0 and real displacements beta = b.
            Used for on/off and for the low-efficiency parity region.
``IMAG``    (phi1, phi2, b1, b2): theta = pi/2 and beta = i b.
            The high-efficiency parity region.
``GENERAL`` all eight real parameters.

Negative ``theta`` or ``b`` are legal here; conversion to
``MeasurementSettings`` canonicalizes them.
"""
from __future__ import annotations

import math

from . import kernels
from .errors import RegimeMismatchError
from .types import DisplacementSetting, MeasurementSettings, QubitSetting, Regime, Scheme

HALF_PI = 0.5 * math.pi

KERNEL_CODE = {
    Regime.ONOFF_REAL: kernels.REAL,
    Regime.PARITY_REGION_I: kernels.REAL,
    Regime.PARITY_REGION_II: kernels.IMAG,
    Regime.GENERAL: kernels.GENERAL,
}

SCHEME_REGIMES = {
    Scheme.ONOFF: (Regime.ONOFF_REAL,),
    Scheme.PARITY: (Regime.PARITY_REGION_I, Regime.PARITY_REGION_II),
}


def check_regime(scheme: Scheme, regime: Regime) -> None:
    if regime is Regime.GENERAL:
        return
    if regime not in SCHEME_REGIMES[scheme]:
        raise RegimeMismatchError(f"regime {regime.value} does not apply to {scheme.value}")


def n_params(regime: Regime) -> int:
    return 8 if regime is Regime.GENERAL else 4


def to_vector(regime: Regime, params) -> list[float]:
    """Expand regime parameters to ``(t1, p1, t2, p2, re1, im1, re2, im2)``."""
    p = [float(v) for v in params]
    if len(p) != n_params(regime):
        raise RegimeMismatchError(f"{regime.value} takes {n_params(regime)} parameters, got {len(p)}")
    code = KERNEL_CODE[regime]
    if code == kernels.REAL:
        return [p[0], 0.0, p[1], 0.0, p[2], 0.0, p[3], 0.0]
    if code == kernels.IMAG:
        return [HALF_PI, p[0], HALF_PI, p[1], 0.0, p[2], 0.0, p[3]]
    return p


def to_settings(regime: Regime, params, scheme) -> MeasurementSettings:
    t1, p1, t2, p2, r1, i1, r2, i2 = to_vector(regime, params)
    return MeasurementSettings(
        QubitSetting(t1, p1),
        QubitSetting(t2, p2),
        DisplacementSetting.from_cartesian(r1, i1),
        DisplacementSetting.from_cartesian(r2, i2),
        Scheme.parse(scheme),
    )


def from_settings(regime: Regime, settings: MeasurementSettings, tol: float = 1e-9) -> list[float]:
    """Inverse of :func:`to_settings`; raises if the settings leave the regime."""
    t1, p1, t2, p2, r1, i1, r2, i2 = settings.as_vector()
    code = KERNEL_CODE[regime]
    if code == kernels.GENERAL:
        return [t1, p1, t2, p2, r1, i1, r2, i2]
    if code == kernels.REAL:
        if max(abs(i1), abs(i2)) > tol:
            raise RegimeMismatchError("displacements are not real")
        out = []
        for th, ph in ((t1, p1), (t2, p2)):
            if abs(math.sin(ph)) > tol:
                raise RegimeMismatchError("qubit settings are not real")
            out.append(th if math.cos(ph) > 0 else -th)
        return out + [r1, r2]
    if max(abs(r1), abs(r2)) > tol or abs(t1 - HALF_PI) > tol or abs(t2 - HALF_PI) > tol:
        raise RegimeMismatchError("settings are not of the |xi| = pi/4, imaginary-beta form")
    return [p1, p2, i1, i2]


def bell(regime: Regime, scheme, alpha: float, eta_A: float, eta_B: float, params) -> float:
    return kernels.bell_regime(
        KERNEL_CODE[regime], Scheme.parse(scheme).code, alpha, eta_A, eta_B, [float(v) for v in params]
    )
