"""Bell-CHSH violation of single-photon / coherent-state hybrid entanglement.

Closed-form correlations, a truncated Fock-space oracle that checks them,
setting optimizers and efficiency thresholds, and a sweep CLI.
"""
from .closed_form import bell_value, bell_value_ideal, expectation_effective, expectation_ideal
from .errors import (
    ConfigError,
    HybridBellError,
    NoBracketError,
    NumericalError,
    RegimeMismatchError,
    TruncationError,
)
from .fock import TruncationConfig, bell_oracle, joint_expectation_oracle
from .kernels import BACKEND
from .optimizer import (
    ThresholdMode,
    ThresholdQuery,
    find_crossover,
    find_threshold,
    maximize_bell,
    maximize_over_alpha,
)
from .roots import bell_max_etaB, etaB_optimal_settings, solve_beta_onoff, solve_beta_parity
from .stationarity import stationarity_residuals
from .types import (
    BellOptimum,
    DisplacementSetting,
    EfficiencyPair,
    HybridParams,
    MeasurementSettings,
    QubitSetting,
    Regime,
    Scheme,
)
from .verify import verify

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BellOptimum", "ConfigError", "DisplacementSetting", "EfficiencyPair", "HybridBellError",
    "HybridParams", "MeasurementSettings", "NoBracketError", "NumericalError", "QubitSetting", "Regime",
    "RegimeMismatchError", "Scheme", "ThresholdMode", "ThresholdQuery", "TruncationConfig", "TruncationError",
    "bell_max_etaB", "bell_oracle", "bell_value", "bell_value_ideal", "etaB_optimal_settings",
    "expectation_effective", "expectation_ideal", "find_crossover", "find_threshold", "joint_expectation_oracle",
    "maximize_bell", "maximize_over_alpha", "solve_beta_onoff", "solve_beta_parity", "stationarity_residuals",
    "verify",
]
