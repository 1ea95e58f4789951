"""Maximization of the Bell function over local settings, amplitude and efficiency."""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import root

from . import kernels, regimes
from .closed_form import bell_value
from .errors import NoBracketError, NumericalError
from .roots import solve_beta_onoff, solve_beta_parity
from .stationarity import has_system, stationarity_residuals
from .types import (
    BellOptimum,
    DisplacementSetting,
    EfficiencyPair,
    MeasurementSettings,
    QubitSetting,
    Regime,
    Scheme,
)

log = logging.getLogger(__name__)

XATOL = 1e-9
FATOL = 1e-12
MAXFEV = 2000
TIE_TOL = 1e-12
ANGLE_STEP = 0.1
BETA_STEP = 0.05

ALPHA_RANGE = (1e-3, 3.0)
ALPHA_TOL = 1e-4
MONOTONE_TOL = 1e-9


class ThresholdMode(str, enum.Enum):
    SYMMETRIC = "symmetric"
    ETA_B_ONLY = "eta-b-only"
    FIXED_ETA_A = "fixed-eta-a"
    FIXED_ETA_B = "fixed-eta-b"


@dataclass(frozen=True)
class ThresholdQuery:
    scheme: Scheme
    mode: ThresholdMode = ThresholdMode.SYMMETRIC
    fixed: Optional[float] = None
    alpha_range: tuple[float, float] = ALPHA_RANGE
    tol: float = 1e-3
    bracket: tuple[float, float] = (0.2, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))
        object.__setattr__(self, "mode", ThresholdMode(self.mode))
        lo, hi = self.alpha_range
        if not (0.0 < lo < hi <= 3.0):
            raise ValueError(f"alpha_range {self.alpha_range} must lie in (0, 3]")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.mode in (ThresholdMode.FIXED_ETA_A, ThresholdMode.FIXED_ETA_B):
            if self.fixed is None or not 0.0 <= self.fixed <= 1.0:
                raise ValueError(f"mode {self.mode.value} needs a fixed efficiency in [0, 1]")

    def efficiencies(self, eta: float) -> EfficiencyPair:
        if self.mode is ThresholdMode.SYMMETRIC:
            return EfficiencyPair(eta, eta)
        if self.mode is ThresholdMode.ETA_B_ONLY:
            return EfficiencyPair(1.0, eta)
        if self.mode is ThresholdMode.FIXED_ETA_A:
            return EfficiencyPair(self.fixed, eta)
        return EfficiencyPair(eta, self.fixed)


# ---------------------------------------------------------------- starts

def _start_grid(regime: Regime, scheme: Scheme, alpha: float, effs: EfficiencyPair) -> list[list[float]]:
    eta_B = max(effs.eta_B, 1e-3)
    if regime in (Regime.ONOFF_REAL, Regime.PARITY_REGION_I):
        bs = min(solve_beta_onoff(alpha, eta_B), 1.5)
        pairs = ((-bs, bs), (-0.35, 0.05))
        return [
            [t1, t2, b1, b2]
            for t1 in (0.5 * math.pi, 2.0)
            for t2 in (0.0, 0.8)
            for b1, b2 in pairs
        ]
    if regime is Regime.PARITY_REGION_II:
        bs = min(solve_beta_parity(alpha, eta_B), 1.5)
        return [
            [p1, p2, -b, b]
            for p1 in (0.0, -0.3)
            for p2 in (0.5 * math.pi, 1.2)
            for b in (bs, 0.5 * bs + 0.02)
        ]
    raise ValueError(f"no start grid for {regime.value}")


def _general_starts(scheme: Scheme, alpha: float, effs: EfficiencyPair) -> list[list[float]]:
    out = []
    for reg in regimes.SCHEME_REGIMES[scheme]:
        for p in _start_grid(reg, scheme, alpha, effs):
            v = regimes.to_vector(reg, p)
            out.append(v)
            out.append([x + 0.05 * ((-1) ** i) for i, x in enumerate(v)])
    return out


def _steps(regime: Regime) -> list[float]:
    if regime is Regime.GENERAL:
        return [ANGLE_STEP] * 4 + [BETA_STEP] * 4
    return [ANGLE_STEP, ANGLE_STEP, BETA_STEP, BETA_STEP]


# ---------------------------------------------------------------- core

@dataclass
class _Candidate:
    value: float
    params: list[float]
    regime: Regime

    def key(self, scheme: Scheme) -> tuple[float, float]:
        s = regimes.to_settings(self.regime, self.params, scheme)
        return (s.beta1.magnitude + s.beta2.magnitude, s.xi1.theta)


def _run_simplex(regime, scheme, alpha, effs, x0, maxfev):
    code = regimes.KERNEL_CODE[regime]
    step = _steps(regime)
    x, v, n = kernels.nelder_mead_max(
        code, scheme.code, alpha, effs.eta_A, effs.eta_B, x0, step, XATOL, FATOL, maxfev
    )
    # one restart from the converged vertex guards against simplex collapse
    x2, v2, n2 = kernels.nelder_mead_max(
        code, scheme.code, alpha, effs.eta_A, effs.eta_B, x, step, XATOL, FATOL, maxfev
    )
    if v2 >= v:
        x, v = x2, v2
    return x, v, n + n2


def _select(cands: Sequence[_Candidate], scheme: Scheme) -> _Candidate:
    top = max(c.value for c in cands)
    tied = [c for c in cands if c.value >= top - TIE_TOL]
    return min(tied, key=lambda c: c.key(scheme))


def _residual_norm(scheme, regime, params, alpha, effs) -> Optional[float]:
    if not has_system(regime):
        return None
    return float(np.linalg.norm(stationarity_residuals(scheme, regime, params, alpha, effs)))


def _polish(scheme, cand: _Candidate, alpha, effs) -> _Candidate:
    """Refine a simplex optimum by solving its stationarity system."""
    if not has_system(cand.regime):
        return cand
    r0 = _residual_norm(scheme, cand.regime, cand.params, alpha, effs)
    try:
        sol = root(
            lambda p: stationarity_residuals(scheme, cand.regime, p, alpha, effs),
            np.asarray(cand.params),
            method="hybr",
            options={"xtol": 1e-14},
        )
    except (ValueError, OverflowError, FloatingPointError):
        return cand
    p = [float(v) for v in sol.x]
    if not np.all(np.isfinite(p)):
        return cand
    v = regimes.bell(cand.regime, scheme, alpha, effs.eta_A, effs.eta_B, p)
    r = _residual_norm(scheme, cand.regime, p, alpha, effs)
    if v >= cand.value - 1e-13 and r < r0 and np.max(np.abs(np.subtract(p, cand.params))) < 1e-3:
        return _Candidate(v, p, cand.regime)
    return cand


def degenerate_settings(scheme) -> MeasurementSettings:
    """Settings reaching B = 2 for a separable state or blind detectors."""
    x = QubitSetting(math.pi / 2, 0.0)
    b = DisplacementSetting(0.0, 0.0)
    return MeasurementSettings(x, x, b, b, Scheme.parse(scheme))


def is_degenerate(alpha: float, effs: EfficiencyPair) -> bool:
    return alpha == 0.0 or (effs.eta_A == 0.0 and effs.eta_B == 0.0)


def maximize_bell(
    scheme,
    alpha: float,
    effs: EfficiencyPair = EfficiencyPair(),
    *,
    regime_set: Optional[Sequence[Regime]] = None,
    polish: bool = True,
    maxfev: int = MAXFEV,
) -> BellOptimum:
    """Best Bell value over local settings at fixed amplitude and efficiencies.

    Runs the simplex from a fixed start grid in every applicable regime
    (parity: both efficiency regions) and keeps the largest value; ties
    within ``TIE_TOL`` go to the smallest ``|beta1| + |beta2|``, then the
    smallest ``theta1``.
    """
    scheme = Scheme.parse(scheme)
    alpha = float(alpha)
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if is_degenerate(alpha, effs):
        s = degenerate_settings(scheme)
        return BellOptimum(bell_value(alpha, s, effs), s, Regime.DEGENERATE, None, 0, ())

    todo = tuple(regime_set) if regime_set is not None else regimes.SCHEME_REGIMES[scheme]
    cands: list[_Candidate] = []
    nfev = 0
    for reg in todo:
        regimes.check_regime(scheme, reg)
        starts = _general_starts(scheme, alpha, effs) if reg is Regime.GENERAL else _start_grid(reg, scheme, alpha, effs)
        for x0 in starts:
            x, v, n = _run_simplex(reg, scheme, alpha, effs, x0, maxfev)
            nfev += n
            cands.append(_Candidate(v, x, reg))

    best = _select(cands, scheme)
    if polish:
        best = _polish(scheme, best, alpha, effs)
    settings = regimes.to_settings(best.regime, best.params, scheme)
    value = bell_value(alpha, settings, effs)
    return BellOptimum(
        value=value,
        settings=settings,
        regime=best.regime,
        residual_norm=_residual_norm(scheme, best.regime, best.params, alpha, effs),
        evaluations=nfev,
        params=tuple(best.params),
    )


# ---------------------------------------------------------------- amplitude

def alpha_grid(lo: float, hi: float) -> np.ndarray:
    """Coarse search grid: logarithmic below 0.1, then steps of 0.1."""
    pts = list(np.geomspace(lo, min(0.1, hi), 8)) if lo < 0.1 else []
    pts += list(np.arange(0.1, hi, 0.1))
    pts.append(hi)
    return np.unique(np.clip(np.asarray(pts), lo, hi))


def golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal ``f`` on ``[lo, hi]``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def maximize_over_alpha(
    scheme,
    effs: EfficiencyPair = EfficiencyPair(),
    alpha_range: tuple[float, float] = ALPHA_RANGE,
    tol: float = ALPHA_TOL,
) -> tuple[float, BellOptimum]:
    """Amplitude maximizing :func:`maximize_bell`, to within ``tol``."""
    scheme = Scheme.parse(scheme)
    lo, hi = alpha_range
    if not 0.0 <= lo < hi <= 3.0:
        raise ValueError(f"alpha_range {alpha_range} must lie in [0, 3]")

    def f(a: float) -> float:
        return maximize_bell(scheme, a, effs, polish=False).value

    grid = alpha_grid(max(lo, 1e-12), hi)
    vals = [f(a) for a in grid]
    i = int(np.argmax(vals))
    a_lo = grid[max(i - 1, 0)]
    a_hi = grid[min(i + 1, len(grid) - 1)]
    a_opt, v_opt = golden_max(f, a_lo, a_hi, tol)
    if vals[i] > v_opt:
        a_opt = float(grid[i])
    opt = maximize_bell(scheme, a_opt, effs)
    return float(a_opt), opt


# ---------------------------------------------------------------- efficiency

def _bisect_sign(g: Callable[[float], float], lo: float, hi: float, tol: float, what: str):
    """Bisection for the sign change of ``g`` (negative at ``lo``, positive at ``hi``)."""
    samples = []
    glo, ghi = g(lo), g(hi)
    samples += [(lo, glo), (hi, ghi)]
    if ghi <= 0.0:
        raise NoBracketError(f"{what}: no positive value at the upper end ({hi}: {ghi:.3g})")
    if glo > 0.0:
        raise NoBracketError(f"{what}: already positive at the lower end ({lo}: {glo:.3g})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        samples.append((mid, gm))
        if gm > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), sorted(samples)


def _assert_monotone(samples, what: str) -> None:
    for (x0, g0), (x1, g1) in zip(samples, samples[1:]):
        if g1 < g0 - MONOTONE_TOL:
            raise NumericalError(f"{what}: not monotone between eta={x0:.6g} ({g0:.3g}) and {x1:.6g} ({g1:.3g})")


def find_threshold(query: ThresholdQuery) -> float:
    """Lowest efficiency at which the amplitude-optimized Bell value exceeds 2."""

    def g(eta: float) -> float:
        _, opt = maximize_over_alpha(query.scheme, query.efficiencies(eta), query.alpha_range)
        return opt.value - 2.0

    lo, hi = query.bracket
    eta, samples = _bisect_sign(g, lo, hi, query.tol, f"threshold[{query.scheme.value}]")
    _assert_monotone(samples, "threshold")
    log.debug("threshold samples %s", samples)
    return eta


def scheme_gap(eta: float, alpha_range=ALPHA_RANGE) -> float:
    """Amplitude-optimized parity maximum minus on/off maximum at symmetric ``eta``."""
    effs = EfficiencyPair(eta, eta)
    _, p = maximize_over_alpha(Scheme.PARITY, effs, alpha_range)
    _, o = maximize_over_alpha(Scheme.ONOFF, effs, alpha_range)
    return p.value - o.value


def find_crossover(
    mode: ThresholdMode = ThresholdMode.SYMMETRIC,
    bracket: tuple[float, float] = (0.9, 1.0),
    tol: float = 1e-4,
    alpha_range: tuple[float, float] = ALPHA_RANGE,
) -> float:
    """Symmetric efficiency above which parity beats on/off."""
    if ThresholdMode(mode) is not ThresholdMode.SYMMETRIC:
        raise ValueError("crossover is defined for symmetric efficiencies only")
    eta, _ = _bisect_sign(lambda e: scheme_gap(e, alpha_range), bracket[0], bracket[1], tol, "crossover")
    return eta
