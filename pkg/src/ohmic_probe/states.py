"""Probe preparations, dephasing factor patterns and Hadamard-product evolution.

Basis ordering is |0>,|1> for one qubit and |00>,|01>,|10>,|11> for two.
"""
import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionMismatch, DomainError
from .spectral import SpectralParams, decoherence

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-12

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


class Scenario(enum.Enum):
    INDEPENDENT = "independent"
    COMMON = "common"


@dataclass(frozen=True)
class SingleQubit:
    theta: float = math.pi / 2

    def __post_init__(self):
        if not 0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")


@dataclass(frozen=True)
class TwoQubitProduct:
    signs: tuple = ("+", "+")

    def __post_init__(self):
        if len(self.signs) != 2 or any(c not in "+-" for c in self.signs):
            raise DomainError(f"signs must be a pair of '+'/'-', got {self.signs!r}")


@dataclass(frozen=True)
class TwoQubitBell:
    which: str = "phi+"

    def __post_init__(self):
        if self.which not in BELL_LABELS:
            raise DomainError(f"unknown Bell state {self.which!r}")


@dataclass(frozen=True)
class Werner:
    p: float
    which: str = "phi+"

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise DomainError(f"Werner weight p must lie in [0, 1], got {self.p}")
        if self.which not in BELL_LABELS:
            raise DomainError(f"unknown Bell state {self.which!r}")


@dataclass(frozen=True)
class Ghz:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"GHZ size must be a positive integer, got {self.n}")


ProbePreparation = Union[SingleQubit, TwoQubitProduct, TwoQubitBell, Werner, Ghz]


def bell_vector(which: str) -> np.ndarray:
    r = 1.0 / math.sqrt(2.0)
    vecs = {
        "phi+": [r, 0, 0, r],
        "phi-": [r, 0, 0, -r],
        "psi+": [0, r, r, 0],
        "psi-": [0, r, -r, 0],
    }
    if which not in vecs:
        raise DomainError(f"unknown Bell state {which!r}")
    return np.array(vecs[which], dtype=complex)


def _projector(v):
    return np.outer(v, v.conj())


def probe_dim(prep) -> int:
    if isinstance(prep, (SingleQubit, Ghz)):
        return 2
    return 4


def initial_state(prep) -> np.ndarray:
    """Density matrix of a preparation.

    GHZ states are returned on the two-dimensional span of |0...0>, |1...1>.
    """
    if isinstance(prep, SingleQubit):
        v = np.array([math.cos(prep.theta / 2), math.sin(prep.theta / 2)], dtype=complex)
        return _projector(v)
    if isinstance(prep, TwoQubitProduct):
        single = {
            "+": np.array([1, 1], dtype=complex) / math.sqrt(2),
            "-": np.array([1, -1], dtype=complex) / math.sqrt(2),
        }
        return _projector(np.kron(single[prep.signs[0]], single[prep.signs[1]]))
    if isinstance(prep, TwoQubitBell):
        return _projector(bell_vector(prep.which))
    if isinstance(prep, Werner):
        return prep.p * _projector(bell_vector(prep.which)) + (1 - prep.p) * np.eye(4) / 4
    if isinstance(prep, Ghz):
        return np.full((2, 2), 0.5, dtype=complex)
    raise TypeError(f"unknown preparation {prep!r}")


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise DomainError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        raise DomainError(f"density matrix trace is {np.trace(rho).real}, expected 1")
    if np.linalg.eigvalsh(rho).min() < PSD_FLOOR:
        raise DomainError("density matrix has a negative eigenvalue")
    return rho


def dephasing_pattern(gamma: float, scenario: Scenario, dim: int) -> np.ndarray:
    """Factor matrix for a given decoherence exponent Gamma."""
    e1 = math.exp(-gamma)
    single = np.array([[1.0, e1], [e1, 1.0]])
    if dim == 2:
        return single
    if dim != 4:
        raise DimensionMismatch(f"factor matrices exist for dim 2 or 4, got {dim}")
    if scenario is Scenario.INDEPENDENT:
        return np.kron(single, single)
    e4 = math.exp(-4.0 * gamma)
    return np.array(
        [
            [1.0, e1, e1, e4],
            [e1, 1.0, 1.0, e1],
            [e1, 1.0, 1.0, e1],
            [e4, e1, e1, 1.0],
        ]
    )


def factor_matrix(t: float, params: SpectralParams, scenario: Scenario, dim: int) -> np.ndarray:
    return dephasing_pattern(decoherence(t, params), scenario, dim)


def evolve(rho0: np.ndarray, f: np.ndarray) -> np.ndarray:
    """rho(t) = Phi(t) o rho(0), the entrywise product."""
    if rho0.shape != f.shape:
        raise DimensionMismatch(f"state {rho0.shape} vs factor matrix {f.shape}")
    return f * rho0


def ghz_coherence(n: int, t: float, params: SpectralParams, scenario: Scenario) -> float:
    """Decay factor of the |0...0><1...1| coherence of an n-qubit GHZ probe.

    Independent baths dephase each qubit separately, so the factor is the product of n
    single-qubit factors, exp(-n Gamma). A common bath couples to the collective
    sum of sigma_z; the coherence between basis states with collective eigenvalues m, m'
    decays as exp(-((m - m')/2)^2 Gamma), which reproduces the 4 Gamma corner of the
    two-qubit common map and gives exp(-n^2 Gamma) for |0...0> vs |1...1>.
    Feeding these into the pure-qubit QFI (k')^2/(1-k^2) gives exactly
    n^2 G'^2/(e^{2nG}-1) and n^4 G'^2/(e^{2n^2 G}-1).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    g = decoherence(t, params)
    if scenario is Scenario.INDEPENDENT:
        return math.exp(-n * g)
    return math.exp(-n * n * g)


def evolved_state(prep, scenario: Scenario, t: float, params: SpectralParams) -> np.ndarray:
    if isinstance(prep, Ghz):
        c = ghz_coherence(prep.n, t, params, scenario)
        return evolve(initial_state(prep), np.array([[1.0, c], [c, 1.0]]))
    dim = probe_dim(prep)
    return evolve(initial_state(prep), factor_matrix(t, params, scenario, dim))
