class HybridBellError(Exception):
    """Base class for package errors."""


class TruncationError(HybridBellError):
    """Fock-space cutoff too small for the requested amplitudes."""


class NumericalError(HybridBellError):
    """A numerical routine failed to meet its contract."""


class NoBracketError(NumericalError):
    """Bisection endpoints do not straddle a sign change."""


class RegimeMismatchError(HybridBellError, ValueError):
    """Parameters do not match the requested optimization regime."""


class ConfigError(HybridBellError, ValueError):
    """Invalid scan configuration."""
