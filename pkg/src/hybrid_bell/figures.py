"""Named reproduction recipes over the generic scan commands.

Landmarks each preset should show are listed in the README.
"""
from __future__ import annotations

from dataclasses import replace

from .errors import ConfigError
from .scan import ScanConfig, parse_grid, run_alpha_scan, run_bell_max, run_contour, run_eta_scan, scheme_difference
from .types import Scheme

BOTH = (Scheme.ONOFF, Scheme.PARITY)
SMALL_ALPHAS = "0.1,0.2,0.3,0.4,0.5"

# name -> (runner, overrides, description)
PRESETS = {
    "fig1": (run_alpha_scan, dict(schemes=BOTH, alpha_grid="0.05:3.0:0.05"),
             "perfect detectors, maximum over settings vs alpha"),
    "fig2": (run_alpha_scan, dict(schemes=BOTH, alpha_grid="0.05:3.0:0.05", eta_b_grid="0.5:1.0:0.1"),
             "eta_A = 1, alpha scan for several eta_B"),
    "fig3": (run_contour, dict(schemes=BOTH, eta_grid="0.5:1.0:0.02", alpha_grid="0.05:1.5:0.05"),
             "symmetric eta x alpha contour"),
    "fig4": (run_eta_scan, dict(schemes=(Scheme.ONOFF,), alpha_grid=SMALL_ALPHAS, eta_grid="0.5:1.0:0.01"),
             "on/off, symmetric eta scan at fixed small alpha"),
    "fig5": (run_eta_scan, dict(schemes=(Scheme.PARITY,), alpha_grid=SMALL_ALPHAS, eta_grid="0.5:1.0:0.01"),
             "parity, symmetric eta scan at fixed small alpha"),
    "fig6": (run_bell_max, dict(schemes=BOTH, eta_grid="0.66:1.0:0.01"),
             "alpha-optimized maxima vs symmetric eta, both schemes"),
    "fig7": (run_bell_max, dict(schemes=BOTH, eta_a_grid="0.5:1.0:0.05", eta_b_grid="0.5:1.0:0.05"),
             "alpha-optimized maxima over (eta_A, eta_B)"),
    "fig8": (None, dict(schemes=BOTH, eta_a_grid="0.5:1.0:0.05", eta_b_grid="0.5:1.0:0.05"),
             "parity minus on/off alpha-optimized maxima over (eta_A, eta_B)"),
    "fig9": (run_bell_max, dict(schemes=(Scheme.PARITY,), eta_a_grid="0.5:1.0:0.05", eta_b_grid="0.5:1.0:0.05"),
             "parity maxima over (eta_A, eta_B) with the winning regime"),
}


def preset_config(name: str, base: ScanConfig) -> ScanConfig:
    """``base`` with the preset's grids; CLI-level options (threads, out) are kept."""
    if name not in PRESETS:
        raise ConfigError(f"unknown figure {name!r}; choose from {', '.join(PRESETS)}")
    _, over, _ = PRESETS[name]
    fields = {k: (parse_grid(v) if k.endswith("grid") else v) for k, v in over.items()}
    fields.setdefault("eta_grid", None)
    return replace(base, figure=name, **fields)


def run_figure(name: str, base: ScanConfig) -> list[dict]:
    cfg = preset_config(name, base)
    runner = PRESETS[name][0]
    if name == "fig8":
        return scheme_difference(run_bell_max(cfg))
    return runner(cfg)
