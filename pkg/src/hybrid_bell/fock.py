"""Brute-force truncated Fock-space evaluation of the hybrid Bell test.

Nothing here uses the analytic expectation values; every number comes from
explicit matrices.  Two-mode operators are ordered with the polarization
qubit as the slow index and the Fock number as the fast index, i.e. basis
element ``|q>|n>`` sits at row ``q * dim + n`` with ``q = 0`` for H.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.stats import poisson

from .errors import TruncationError
from .types import (
    DisplacementSetting,
    EfficiencyPair,
    MeasurementSettings,
    QubitSetting,
    Scheme,
)

MIN_DIM = 32
DEFAULT_TAIL_TOL = 1e-12
FLAG_TOL = 1e-10
UNITARY_TOL = 1e-8


def poisson_tail(mean: float, dim: int) -> float:
    """Probability mass of photon numbers ``>= dim`` for Poisson(mean)."""
    return float(poisson.sf(dim - 1, mean)) if mean > 0 else 0.0


@dataclass(frozen=True)
class TruncationConfig:
    dim: int
    tail_tol: float = DEFAULT_TAIL_TOL

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dim must be an integer >= 2, got {self.dim}")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")

    @classmethod
    def for_amplitudes(cls, *amplitudes: complex, tail_tol: float = DEFAULT_TAIL_TOL):
        """Smallest safe cutoff: Poisson((sum|amp| + 2)^2) tail below ``tail_tol``."""
        mu = (sum(abs(a) for a in amplitudes) + 2.0) ** 2
        dim = max(MIN_DIM, int(poisson.isf(tail_tol, mu)))
        while poisson_tail(mu, dim) >= tail_tol:
            dim += 1
        while dim > MIN_DIM and poisson_tail(mu, dim - 1) < tail_tol:
            dim -= 1
        return cls(dim, tail_tol)

    def check(self, amplitude: float) -> None:
        """Raise unless a coherent state of this modulus fits in the cutoff."""
        tail = poisson_tail(abs(amplitude) ** 2, self.dim)
        if tail >= self.tail_tol:
            raise TruncationError(
                f"dim={self.dim} leaves Poisson tail {tail:.3g} >= {self.tail_tol:.3g} "
                f"for |amplitude|={abs(amplitude):.4g}"
            )


@dataclass(frozen=True)
class FockOperator:
    dim: int
    entries: np.ndarray
    hermitian: bool = False
    diagonal: bool = False
    unitary: bool = False

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"entries shape {m.shape} != ({self.dim}, {self.dim})")
        object.__setattr__(self, "entries", m)
        if self.hermitian and np.max(np.abs(m - m.conj().T)) > FLAG_TOL:
            raise ValueError("operator flagged hermitian is not")
        if self.diagonal and np.max(np.abs(m - np.diag(np.diag(m)))) > FLAG_TOL:
            raise ValueError("operator flagged diagonal is not")
        if self.unitary and unitarity_defect(m) > UNITARY_TOL:
            raise TruncationError("operator flagged unitary is not")

    @property
    def diag(self) -> np.ndarray:
        return np.real(np.diag(self.entries))


@dataclass(frozen=True)
class HybridState:
    alpha: complex
    dim: int
    matrix: np.ndarray = field(repr=False)

    def reduced_field(self) -> np.ndarray:
        """Trace out the polarization qubit."""
        d = self.dim
        return self.matrix[:d, :d] + self.matrix[d:, d:]


def unitarity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def coherent_vector(alpha: complex, dim: int) -> np.ndarray:
    """Number-basis amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` for ``n < dim``."""
    out = np.empty(dim, dtype=complex)
    out[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(1, dim):
        out[n] = out[n - 1] * alpha / math.sqrt(n)
    return out


def hybrid_state(alpha: complex, trunc: TruncationConfig) -> HybridState:
    """``(|H>|alpha> + |V>|-alpha>)/sqrt(2)`` as a density matrix."""
    trunc.check(alpha)
    d = trunc.dim
    psi = np.concatenate([coherent_vector(alpha, d), coherent_vector(-alpha, d)]) / math.sqrt(2.0)
    return HybridState(complex(alpha), d, np.outer(psi, psi.conj()))


def displacement_operator(beta: complex, trunc: TruncationConfig) -> FockOperator:
    """``exp(beta a^dag - beta^* a)`` from the truncated generator."""
    trunc.check(beta)
    a = annihilation(trunc.dim)
    gen = complex(beta) * a.conj().T - complex(beta).conjugate() * a
    return FockOperator(trunc.dim, expm(gen), unitary=True)


def lossy_povm_element(n: int, p: float, trunc: TruncationConfig) -> FockOperator:
    """Probability of registering ``n`` clicks with a detector of efficiency ``p``."""
    if not 0 <= n < trunc.dim:
        raise ValueError(f"n={n} outside [0, {trunc.dim})")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"efficiency {p} outside [0, 1]")
    d = np.zeros(trunc.dim)
    for m in range(trunc.dim - n):
        d[n + m] = math.comb(n + m, n) * p**n * (1.0 - p) ** m
    return FockOperator(trunc.dim, np.diag(d), hermitian=True, diagonal=True)


def effective_measurement(scheme, eta: float, trunc: TruncationConfig) -> FockOperator:
    """Dichotomic observable seen through the lossy detector.

    Built by summing the click-number POVM elements with the outcome signs:
    on/off assigns +1 to zero clicks, parity assigns ``(-1)^n``.
    """
    scheme = Scheme.parse(scheme)
    total = np.zeros(trunc.dim)
    for n in range(trunc.dim):
        sign = (1.0 if n == 0 else -1.0) if scheme is Scheme.ONOFF else (-1.0) ** n
        total += sign * lossy_povm_element(n, eta, trunc).diag
    return FockOperator(trunc.dim, np.diag(total), hermitian=True, diagonal=True)


def povm_completeness(p: float, trunc: TruncationConfig) -> np.ndarray:
    """Diagonal of the summed POVM; equals one wherever the truncated sum converged."""
    return sum(lossy_povm_element(n, p, trunc).diag for n in range(trunc.dim))


def qubit_unitary(xi: complex) -> np.ndarray:
    r = abs(xi)
    if r == 0.0:
        return np.eye(2, dtype=complex)
    u = xi / r
    c, s = math.cos(r), math.sin(r)
    return np.array([[c, u * s], [-u.conjugate() * s, c]], dtype=complex)


def qubit_observable(xi: QubitSetting | complex) -> np.ndarray:
    """``U(xi) (|H><H| - |V><V|) U(xi)^dag``."""
    if isinstance(xi, QubitSetting):
        xi = xi.xi
    u = qubit_unitary(complex(xi))
    return u @ np.diag([1.0, -1.0]).astype(complex) @ u.conj().T


def field_observable(beta: complex, scheme, eta: float, trunc: TruncationConfig) -> np.ndarray:
    dop = displacement_operator(beta, trunc).entries
    return dop @ effective_measurement(scheme, eta, trunc).entries @ dop.conj().T


def _beta(beta) -> complex:
    return beta.beta if isinstance(beta, DisplacementSetting) else complex(beta)


def joint_expectation_oracle(
    alpha: complex,
    xi,
    beta,
    scheme,
    effs: EfficiencyPair,
    trunc: TruncationConfig | None = None,
) -> float:
    """``eta_A <O_A (x) O_B> + (1 - eta_A) Tr[O_B rho_B]`` from dense matrices."""
    beta = _beta(beta)
    if trunc is None:
        trunc = TruncationConfig.for_amplitudes(alpha, beta)
    trunc.check(abs(alpha) + abs(beta))
    state = hybrid_state(alpha, trunc)
    o_b = field_observable(beta, scheme, effs.eta_B, trunc)
    o_a = qubit_observable(xi)
    joint = np.real(np.trace(state.matrix @ np.kron(o_a, o_b)))
    marginal = np.real(np.trace(o_b @ state.reduced_field()))
    return float(effs.eta_A * joint + (1.0 - effs.eta_A) * marginal)


def bell_oracle(
    alpha: complex,
    settings: MeasurementSettings,
    effs: EfficiencyPair,
    trunc: TruncationConfig | None = None,
) -> float:
    if trunc is None:
        trunc = TruncationConfig.for_amplitudes(
            alpha, max(settings.beta1.magnitude, settings.beta2.magnitude)
        )
    e = lambda xi, b: joint_expectation_oracle(alpha, xi, b, settings.scheme, effs, trunc)  # noqa: E731
    return (
        e(settings.xi1, settings.beta1)
        + e(settings.xi1, settings.beta2)
        + e(settings.xi2, settings.beta2)
        - e(settings.xi2, settings.beta1)
    )


def rotate_alpha(alpha: float, chi: float) -> complex:
    """``alpha * exp(i chi)``; pairs with shifting every displacement phase by ``chi``."""
    return alpha * cmath.exp(1j * chi)
