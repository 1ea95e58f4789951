"""Cross-validation of the closed forms against the Fock-space oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_form, fock
from .types import DisplacementSetting, EfficiencyPair, QubitSetting, Scheme

FAIL_TOL = 1e-7


@dataclass(frozen=True)
class SampleTuple:
    alpha: float
    xi: QubitSetting
    beta: DisplacementSetting
    effs: EfficiencyPair


@dataclass
class VerifyReport:
    samples: int
    seed: int
    dim: int | None
    max_deviation: float = 0.0
    max_deviation_onoff: float = 0.0
    max_deviation_parity: float = 0.0
    max_deviation_ideal: float = 0.0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.max_deviation <= FAIL_TOL

    def row(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "dim": self.dim,
            "max_deviation": self.max_deviation,
            "max_deviation_onoff": self.max_deviation_onoff,
            "max_deviation_parity": self.max_deviation_parity,
            "max_deviation_ideal": self.max_deviation_ideal,
            "failures": len(self.failures),
            "status": "pass" if self.ok else "fail",
        }


def draw_tuples(samples: int, seed: int, max_amp: float = 1.5, perfect: bool = False) -> list[SampleTuple]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(samples):
        a, th, ph, b, big_phi, ea, eb = rng.uniform(
            [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [max_amp, math.pi, 2 * math.pi, max_amp, 2 * math.pi, 1.0, 1.0],
        )
        effs = EfficiencyPair(1.0, 1.0) if perfect else EfficiencyPair(ea, eb)
        out.append(SampleTuple(float(a), QubitSetting(th, ph), DisplacementSetting(b, big_phi), effs))
    return out


def verify_tuples(tuples, trunc: fock.TruncationConfig | None = None, seed: int = 0) -> VerifyReport:
    """Compare oracle and closed-form correlations for both schemes on every tuple."""
    rep = VerifyReport(len(tuples), seed, trunc.dim if trunc else None)
    for k, t in enumerate(tuples):
        for scheme in Scheme:
            try:
                o = fock.joint_expectation_oracle(t.alpha, t.xi, t.beta, scheme, t.effs, trunc)
            except Exception as exc:  # per-sample truncation failures are reported, not fatal
                rep.failures.append(f"sample {k} ({scheme.value}): {exc}")
                continue
            c = closed_form.expectation_effective(scheme, t.alpha, t.xi, t.beta, t.effs)
            d = abs(o - c)
            rep.max_deviation = max(rep.max_deviation, d)
            if scheme is Scheme.ONOFF:
                rep.max_deviation_onoff = max(rep.max_deviation_onoff, d)
            else:
                rep.max_deviation_parity = max(rep.max_deviation_parity, d)
            if t.effs.eta_A == 1.0 and t.effs.eta_B == 1.0:
                ideal = closed_form.expectation_ideal(scheme, t.alpha, t.xi, t.beta)
                rep.max_deviation_ideal = max(rep.max_deviation_ideal, abs(ideal - o), abs(ideal - c))
    return rep


def verify(
    samples: int,
    seed: int = 1,
    trunc: fock.TruncationConfig | None = None,
    max_amp: float = 1.5,
    perfect: bool = False,
) -> VerifyReport:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    return verify_tuples(draw_tuples(samples, seed, max_amp, perfect), trunc, seed)
