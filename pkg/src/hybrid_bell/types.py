"""Domain types shared across the package."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

TWO_PI = 2.0 * math.pi


class Scheme(str, enum.Enum):
    """Dichotomic measurement applied to the coherent-state mode."""

    ONOFF = "onoff"
    PARITY = "parity"

    @property
    def code(self) -> int:
        return 0 if self is Scheme.ONOFF else 1

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, Scheme):
            return value
        key = str(value).strip().lower().replace("/", "").replace("-", "").replace("_", "")
        for s in cls:
            if s.value == key:
                return s
        raise ValueError(f"unknown scheme {value!r}")


class Regime(str, enum.Enum):
    """Parameterization in which an optimum was found."""

    ONOFF_REAL = "OnOffReal"
    PARITY_REGION_I = "ParityRegionI"
    PARITY_REGION_II = "ParityRegionII"
    GENERAL = "General"
    DEGENERATE = "Degenerate"


def wrap_angle(x: float) -> float:
    """Reduce ``x`` into ``[0, 2*pi)``."""
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    if y >= TWO_PI:
        y = 0.0
    return y


@dataclass(frozen=True)
class QubitSetting:
    """Polarization rotation ``xi = -(theta/2) exp(-i phi)``.

    Stored canonically with ``theta`` in ``[0, pi]`` and ``phi`` in
    ``[0, 2 pi)``; any real input is accepted and mapped to the equivalent
    canonical pair (the observable is unchanged).
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = wrap_angle(float(self.theta))
        phi = float(self.phi)
        if theta > math.pi:
            theta = TWO_PI - theta
            phi += math.pi
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", wrap_angle(phi))

    @property
    def xi(self) -> complex:
        return -(self.theta / 2.0) * complex(math.cos(self.phi), -math.sin(self.phi))


@dataclass(frozen=True)
class DisplacementSetting:
    """Displacement amplitude ``beta = magnitude * exp(i phase)``."""

    magnitude: float
    phase: float = 0.0

    def __post_init__(self):
        mag = float(self.magnitude)
        phase = float(self.phase)
        if mag < 0.0:
            mag = -mag
            phase += math.pi
        object.__setattr__(self, "magnitude", mag)
        object.__setattr__(self, "phase", wrap_angle(phase))

    @classmethod
    def from_complex(cls, beta: complex) -> "DisplacementSetting":
        beta = complex(beta)
        return cls(abs(beta), math.atan2(beta.imag, beta.real) if beta != 0 else 0.0)

    @classmethod
    def from_cartesian(cls, re: float, im: float) -> "DisplacementSetting":
        if im == 0.0:
            # keeps real displacements exactly real
            return cls(re, 0.0)
        if re == 0.0:
            return cls(im, math.pi / 2)
        return cls(math.hypot(re, im), math.atan2(im, re))

    @property
    def beta(self) -> complex:
        return self.magnitude * complex(math.cos(self.phase), math.sin(self.phase))

    @property
    def cartesian(self) -> tuple[float, float]:
        return self.magnitude * math.cos(self.phase), self.magnitude * math.sin(self.phase)


@dataclass(frozen=True)
class EfficiencyPair:
    """Detector efficiencies of the polarization (A) and field (B) sides."""

    eta_A: float = 1.0
    eta_B: float = 1.0

    def __post_init__(self):
        for name in ("eta_A", "eta_B"):
            v = float(getattr(self, name))
            if not (0.0 <= v <= 1.0) or math.isnan(v):
                raise ValueError(f"{name}={v} outside [0, 1]")
            object.__setattr__(self, name, v)

    @classmethod
    def symmetric(cls, eta: float) -> "EfficiencyPair":
        return cls(eta, eta)


@dataclass(frozen=True)
class HybridParams:
    """Coherent amplitude of the shared state; its phase is absorbed into beta."""

    alpha: float

    def __post_init__(self):
        if not self.alpha >= 0.0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")


@dataclass(frozen=True)
class MeasurementSettings:
    xi1: QubitSetting
    xi2: QubitSetting
    beta1: DisplacementSetting
    beta2: DisplacementSetting
    scheme: Scheme = Scheme.ONOFF

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))

    def as_vector(self) -> list[float]:
        """8-vector ``(theta1, phi1, theta2, phi2, re1, im1, re2, im2)``."""
        r1, i1 = self.beta1.cartesian
        r2, i2 = self.beta2.cartesian
        return [self.xi1.theta, self.xi1.phi, self.xi2.theta, self.xi2.phi, r1, i1, r2, i2]


@dataclass(frozen=True)
class BellOptimum:
    value: float
    settings: MeasurementSettings
    regime: Regime
    residual_norm: Optional[float] = None
    evaluations: int = 0
    params: tuple[float, ...] = field(default=())
