"""Scan configuration and the grid drivers behind the CLI."""
from __future__ import annotations

import configparser
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Callable, Iterable, Optional

from . import fock
from .closed_form import bell_value
from .errors import ConfigError
from .optimizer import (
    ALPHA_RANGE,
    ThresholdMode,
    ThresholdQuery,
    find_crossover,
    find_threshold,
    maximize_bell,
    maximize_over_alpha,
)
from .types import BellOptimum, EfficiencyPair, Scheme
from .verify import verify

COMMANDS = ("bell-max", "alpha-scan", "eta-scan", "contour", "threshold", "crossover", "verify", "figures")
THREADS_ENV = "HYBRID_BELL_THREADS"


def parse_grid(text) -> tuple[float, ...]:
    """``start:stop:step`` (stop inclusive), a comma list, or a single number."""
    if isinstance(text, (int, float)):
        return (float(text),)
    if isinstance(text, (tuple, list)):
        return tuple(float(v) for v in text)
    s = str(text).strip()
    try:
        if ":" in s:
            parts = [float(p) for p in s.split(":")]
            if len(parts) != 3:
                raise ConfigError(f"grid {s!r} must be start:stop:step")
            start, stop, step = parts
            if step <= 0 or stop < start:
                raise ConfigError(f"grid {s!r} needs step > 0 and stop >= start")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            return tuple(round(start + i * step, 12) for i in range(n))
        vals = tuple(float(p) for p in s.split(",") if p.strip())
    except ValueError as exc:
        raise ConfigError(f"bad grid {s!r}: {exc}") from None
    if not vals:
        raise ConfigError("empty grid")
    return vals


def parse_range(text) -> tuple[float, float]:
    if isinstance(text, (tuple, list)):
        lo, hi = text
    else:
        try:
            lo, hi = (float(p) for p in str(text).split(":"))
        except ValueError:
            raise ConfigError(f"bad range {text!r}; expected lo:hi") from None
    return float(lo), float(hi)


def parse_schemes(text) -> tuple[Scheme, ...]:
    s = str(text).strip().lower()
    if s in ("both", "all"):
        return (Scheme.ONOFF, Scheme.PARITY)
    try:
        return tuple(Scheme.parse(p) for p in s.split(","))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class ScanConfig:
    command: str
    schemes: tuple[Scheme, ...] = (Scheme.ONOFF, Scheme.PARITY)
    alpha_grid: Optional[tuple[float, ...]] = None
    eta_grid: Optional[tuple[float, ...]] = None
    eta_a_grid: tuple[float, ...] = (1.0,)
    eta_b_grid: tuple[float, ...] = (1.0,)
    alpha_range: tuple[float, float] = ALPHA_RANGE
    dim: Optional[int] = None
    tail_tol: float = fock.DEFAULT_TAIL_TOL
    out: Optional[str] = None
    format: str = "csv"
    threads: int = 1
    seed: int = 1
    samples: int = 200
    max_amp: float = 1.5
    perfect: bool = False
    mode: str = "symmetric"
    fixed: Optional[float] = None
    tol: float = 1e-3
    figure: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        for name in ("alpha_grid", "eta_grid", "eta_a_grid", "eta_b_grid"):
            g = getattr(self, name)
            if g is not None and len(g) == 0:
                raise ConfigError(f"{name} is empty")
        for name in ("eta_grid", "eta_a_grid", "eta_b_grid"):
            g = getattr(self, name) or ()
            if any(not 0.0 <= v <= 1.0 for v in g):
                raise ConfigError(f"{name} values must lie in [0, 1]")
        if self.alpha_grid and any(v < 0 for v in self.alpha_grid):
            raise ConfigError("alpha_grid values must be non-negative")
        lo, hi = self.alpha_range
        if not 0.0 < lo < hi <= 3.0:
            raise ConfigError(f"alpha_range must lie in (0, 3], got {self.alpha_range}")
        if self.threads < 1 or self.samples < 1 or self.tol <= 0 or self.tail_tol <= 0:
            raise ConfigError("threads, samples, tol and tail_tol must be positive")
        if self.dim is not None and self.dim < 2:
            raise ConfigError("dim must be >= 2")
        try:
            ThresholdMode(self.mode)
        except ValueError:
            raise ConfigError(f"unknown threshold mode {self.mode!r}") from None

    def efficiency_points(self) -> list[EfficiencyPair]:
        if self.eta_grid is not None:
            return [EfficiencyPair(e, e) for e in self.eta_grid]
        return [EfficiencyPair(a, b) for a in self.eta_a_grid for b in self.eta_b_grid]

    def truncation(self) -> Optional[fock.TruncationConfig]:
        return fock.TruncationConfig(self.dim, self.tail_tol) if self.dim else None


_CONVERTERS: dict[str, Callable] = {
    "schemes": parse_schemes,
    "scheme": parse_schemes,
    "alpha_grid": parse_grid,
    "eta_grid": parse_grid,
    "eta_a_grid": parse_grid,
    "eta_b_grid": parse_grid,
    "alpha_range": parse_range,
    "dim": int,
    "tail_tol": float,
    "threads": int,
    "seed": int,
    "samples": int,
    "max_amp": float,
    "perfect": lambda v: str(v).strip().lower() in ("1", "true", "yes", "on"),
    "fixed": float,
    "tol": float,
}


def coerce(key: str, value):
    key = key.replace("-", "_")
    if key == "scheme":
        key = "schemes"
    if key not in {f.name for f in fields(ScanConfig)}:
        raise ConfigError(f"unknown config key {key!r}")
    conv = _CONVERTERS.get(key)
    try:
        return key, conv(value) if conv and value is not None else value
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {value!r} ({exc})") from None


def load_config(path: str, command: str) -> dict:
    """Read the ``[command]`` section of a flat key-value file."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    sections = cp.sections()
    if len(sections) != 1:
        raise ConfigError(f"config must hold exactly one [command] section, found {sections}")
    if sections[0] != command:
        raise ConfigError(f"config section [{sections[0]}] does not match command {command!r}")
    return dict(coerce(k, v) for k, v in cp.items(command))


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------- rows

@dataclass(frozen=True)
class ScanRow:
    scheme: str
    alpha: float
    eta_A: float
    eta_B: float
    bell_max: float
    alpha_opt: Optional[float]
    theta1: float
    phi1: float
    theta2: float
    phi2: float
    beta1_mag: float
    beta1_phase: float
    beta2_mag: float
    beta2_phase: float
    regime: str
    residual_norm: Optional[float]

    @classmethod
    def from_optimum(cls, scheme: Scheme, alpha: float, effs: EfficiencyPair, opt: BellOptimum,
                     alpha_opt: Optional[float] = None) -> "ScanRow":
        s = opt.settings
        return cls(
            scheme.value, alpha, effs.eta_A, effs.eta_B, opt.value, alpha_opt,
            s.xi1.theta, s.xi1.phi, s.xi2.theta, s.xi2.phi,
            s.beta1.magnitude, s.beta1.phase, s.beta2.magnitude, s.beta2.phase,
            opt.regime.value, opt.residual_norm,
        )

    def settings(self):
        from .types import DisplacementSetting, MeasurementSettings, QubitSetting

        return MeasurementSettings(
            QubitSetting(self.theta1, self.phi1), QubitSetting(self.theta2, self.phi2),
            DisplacementSetting(self.beta1_mag, self.beta1_phase),
            DisplacementSetting(self.beta2_mag, self.beta2_phase),
            Scheme.parse(self.scheme),
        )

    def reevaluate(self) -> float:
        return bell_value(self.alpha, self.settings(), EfficiencyPair(self.eta_A, self.eta_B))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _point_task(args) -> dict:
    scheme, alpha, eta_a, eta_b = args
    effs = EfficiencyPair(eta_a, eta_b)
    return ScanRow.from_optimum(Scheme(scheme), alpha, effs, maximize_bell(scheme, alpha, effs)).as_dict()


def _alpha_opt_task(args) -> dict:
    scheme, eta_a, eta_b, alpha_range = args
    effs = EfficiencyPair(eta_a, eta_b)
    a, opt = maximize_over_alpha(scheme, effs, alpha_range)
    return ScanRow.from_optimum(Scheme(scheme), a, effs, opt, alpha_opt=a).as_dict()


def _threshold_task(args) -> dict:
    scheme, mode, fixed, alpha_range, tol = args
    eta = find_threshold(ThresholdQuery(scheme, mode, fixed, alpha_range, tol))
    return {"scheme": scheme, "mode": mode, "fixed": fixed, "threshold": eta}


def _map(fn, tasks: list, threads: int) -> list:
    """Ordered map; results come back in task order whatever the pool does."""
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * threads))))


def _effs_tasks(cfg: ScanConfig) -> Iterable[tuple[float, float]]:
    return [(e.eta_A, e.eta_B) for e in cfg.efficiency_points()]


def run_alpha_scan(cfg: ScanConfig) -> list[dict]:
    if not cfg.alpha_grid:
        raise ConfigError(f"{cfg.command} needs alpha_grid")
    tasks = [
        (s.value, a, ea, eb)
        for s in cfg.schemes
        for ea, eb in _effs_tasks(cfg)
        for a in cfg.alpha_grid
    ]
    return _map(_point_task, tasks, cfg.threads)


def run_bell_max(cfg: ScanConfig) -> list[dict]:
    if cfg.alpha_grid:
        return run_alpha_scan(cfg)
    tasks = [(s.value, ea, eb, cfg.alpha_range) for s in cfg.schemes for ea, eb in _effs_tasks(cfg)]
    return _map(_alpha_opt_task, tasks, cfg.threads)


def run_eta_scan(cfg: ScanConfig) -> list[dict]:
    if cfg.eta_grid is None:
        raise ConfigError("eta-scan needs eta_grid")
    if cfg.alpha_grid:
        tasks = [(s.value, a, e, e) for s in cfg.schemes for a in cfg.alpha_grid for e in cfg.eta_grid]
        return _map(_point_task, tasks, cfg.threads)
    return run_bell_max(cfg)


def run_contour(cfg: ScanConfig) -> list[dict]:
    cfg = replace(
        cfg,
        eta_grid=cfg.eta_grid or parse_grid("0.5:1.0:0.01"),
        alpha_grid=cfg.alpha_grid or parse_grid("0.05:1.5:0.05"),
    )
    tasks = [(s.value, a, e, e) for s in cfg.schemes for e in cfg.eta_grid for a in cfg.alpha_grid]
    return _map(_point_task, tasks, cfg.threads)


def run_threshold(cfg: ScanConfig) -> list[dict]:
    tasks = [(s.value, cfg.mode, cfg.fixed, cfg.alpha_range, cfg.tol) for s in cfg.schemes]
    return _map(_threshold_task, tasks, cfg.threads)


def run_crossover(cfg: ScanConfig) -> list[dict]:
    tol = min(cfg.tol, 1e-4)
    return [{"mode": "symmetric", "crossover": find_crossover(tol=tol, alpha_range=cfg.alpha_range)}]


def run_verify(cfg: ScanConfig) -> tuple[list[dict], bool]:
    rep = verify(cfg.samples, cfg.seed, cfg.truncation(), cfg.max_amp, cfg.perfect)
    return [rep.row()], rep.ok


def scheme_difference(rows: list[dict]) -> list[dict]:
    """Pair on/off and parity rows at equal efficiencies: parity minus on/off."""
    by = {}
    for r in rows:
        by.setdefault((r["eta_A"], r["eta_B"]), {})[r["scheme"]] = r
    out = []
    for (ea, eb), pair in by.items():
        o, p = pair["onoff"], pair["parity"]
        out.append({
            "eta_A": ea, "eta_B": eb,
            "onoff_max": o["bell_max"], "onoff_alpha_opt": o["alpha_opt"],
            "parity_max": p["bell_max"], "parity_alpha_opt": p["alpha_opt"],
            "difference": p["bell_max"] - o["bell_max"],
        })
    return out


RUNNERS = {
    "bell-max": run_bell_max,
    "alpha-scan": run_alpha_scan,
    "eta-scan": run_eta_scan,
    "contour": run_contour,
    "threshold": run_threshold,
    "crossover": run_crossover,
}
