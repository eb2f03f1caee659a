"""Quantum Fisher information of dephasing probes.

Two independent routes: ``qfi_numeric`` diagonalizes the evolved state and
differentiates it by central finite differences; the ``qfi_*`` functions are
the closed forms in terms of Gamma and its omega_c derivative.
"""
import enum
import math
from typing import Callable

import numpy as np

from .errors import DomainError, NumericalError
from .spectral import SpectralParams, decoherence, decoherence_factor_dwc
from .specialfn import gamma_euler
from .states import (
    Ghz,
    Scenario,
    SingleQubit,
    TwoQubitBell,
    TwoQubitProduct,
    Werner,
    evolved_state,
)

DEGENERACY_THRESHOLD = 1e-12

StateFamily = Callable[[float], np.ndarray]


class SeriesKind(enum.Enum):
    INDEPENDENT_PRODUCT = "indep-product"
    INDEPENDENT_BELL = "indep-bell"


def qfi_from_derivative(rho: np.ndarray, drho: np.ndarray):
    """QFI from a state and its parameter derivative.

    Uses H = sum_{n,m} 2 |<phi_m| d rho |phi_n>|^2 / (rho_n + rho_m) in the eigenbasis
    of rho. Its n = m terms are the classical part (d rho_n)^2 / rho_n and its n != m terms
    equal 2 (rho_n - rho_m)^2 / (rho_n + rho_m) |<phi_m|d phi_n>|^2, so the split form and
    this one agree term by term. Pairs with rho_n + rho_m below the degeneracy threshold
    are skipped.

    Returns (h, number_of_skipped_pairs).
    """
    try:
        evals, evecs = np.linalg.eigh(rho)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    d = evecs.conj().T @ drho @ evecs
    denom = evals[:, None] + evals[None, :]
    keep = denom >= DEGENERACY_THRESHOLD
    skipped = int((~keep).sum())
    terms = np.zeros_like(denom)
    terms[keep] = 2.0 * np.abs(d[keep]) ** 2 / denom[keep]
    return float(terms.sum()), skipped


def state_family(prep, scenario: Scenario, t: float, s: float) -> StateFamily:
    """omega_c -> evolved probe state at fixed (t, s)."""
    def build(omega_c):
        return evolved_state(prep, scenario, t, SpectralParams(s, omega_c))

    return build


def qfi_numeric(family: StateFamily, omega_c: float, h_step: float = None) -> float:
    """Eigendecomposition QFI with a central-difference state derivative."""
    if h_step is None:
        h_step = 1e-5 * max(1.0, omega_c)
    if h_step <= 0:
        raise DomainError("h_step must be positive")
    rho = family(omega_c)
    drho = (family(omega_c + h_step) - family(omega_c - h_step)) / (2.0 * h_step)
    h, _ = qfi_from_derivative(rho, drho)
    return h


def _dwc_sq(t, params):
    return decoherence_factor_dwc(t, params) ** 2


def _over_expm1(num: float, y: float) -> float:
    """num / (e^y - 1) for y > 0 without overflow."""
    if y == 0:
        return 0.0
    return num * math.exp(-y) / -math.expm1(-y)


def qfi_single(t: float, params: SpectralParams, theta: float = math.pi / 2) -> float:
    """sin^2(theta) [d Gamma/d omega_c]^2 / (e^{2 Gamma} - 1)."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if t == 0:
        return 0.0
    g = decoherence(t, params)
    return _over_expm1(math.sin(theta) ** 2 * _dwc_sq(t, params), 2.0 * g)


def qfi_two_independent_product(t: float, params: SpectralParams) -> float:
    return 2.0 * qfi_single(t, params)


def qfi_two_independent_bell(t: float, params: SpectralParams) -> float:
    if t == 0:
        return 0.0
    return _over_expm1(4.0 * _dwc_sq(t, params), 4.0 * decoherence(t, params))


def qfi_two_common_product(t: float, params: SpectralParams) -> float:
    """8 {1 + e^{4G}[1 + sinh 2G]} G'^2 / (3 e^{8G} - 2 e^{4G} - 1).

    Numerator and denominator are divided by e^{8G} and written with q = e^{-2G}
    and w = 1 - e^{-4G}, so the denominator becomes w (4 - w).
    """
    if t == 0:
        return 0.0
    g = decoherence(t, params)
    q = math.exp(-2.0 * g)
    w = -math.expm1(-4.0 * g)
    num = 8.0 * (q**4 + q**2 + 0.5 * (q - q**3))
    return _dwc_sq(t, params) * num / (w * (4.0 - w))


def qfi_two_common_bell(t: float, params: SpectralParams) -> float:
    """16 G'^2 / (e^{8G} - 1); carried by phi+/phi-, psi+/psi- are insensitive."""
    if t == 0:
        return 0.0
    return _over_expm1(16.0 * _dwc_sq(t, params), 8.0 * decoherence(t, params))


def qfi_werner(t: float, params: SpectralParams, p: float, scenario: Scenario) -> float:
    """Werner probe p |phi><phi| + (1-p) I/4 with phi = phi+/-.

    Independent: 8 p^2 (1+p) G'^2 / ((1+p)^2 e^{4G} - 4 p^2)
    Common:     32 p^2 (1+p) G'^2 / ((1+p)^2 e^{8G} - 4 p^2)
    """
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if t == 0 or p == 0:
        return 0.0
    g = decoherence(t, params)
    k, pref = (4.0, 8.0) if scenario is Scenario.INDEPENDENT else (8.0, 32.0)
    # (1+p)^2 - 4p^2 e^{-kG} split so p = 1 and small G do not cancel
    denom = (1.0 - p) * (1.0 + 3.0 * p) + 4.0 * p * p * -math.expm1(-k * g)
    return pref * p * p * (1.0 + p) * _dwc_sq(t, params) * math.exp(-k * g) / denom


def qfi_ghz(t: float, params: SpectralParams, n: int, scenario: Scenario) -> float:
    """N^2 G'^2/(e^{2NG}-1) (independent) or N^4 G'^2/(e^{2N^2 G}-1) (common)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if t == 0:
        return 0.0
    g = decoherence(t, params)
    m = n if scenario is Scenario.INDEPENDENT else n * n
    return _over_expm1(m * m * _dwc_sq(t, params), 2.0 * m * g)


def qfi_small_t_series(t: float, params: SpectralParams, which: SeriesKind) -> float:
    """Fourth-order small-time expansion of H_I^P or H_I^B."""
    s, wc = params.s, params.omega_c
    g1 = gamma_euler(1.0 + s)
    g3 = gamma_euler(3.0 + s)
    c = 2.0 if which is SeriesKind.INDEPENDENT_PRODUCT else 4.0
    return 2.0 * g1 * t**2 - 0.5 * wc**2 * (c * g1**2 + g3) * t**4


def outcome_distribution(t: float, params: SpectralParams):
    """(p_plus, p_minus) and their omega_c derivatives for the |+> probe."""
    g = decoherence(t, params)
    c = math.exp(-g)
    dc = -c * decoherence_factor_dwc(t, params)
    p_plus = 0.5 * (1.0 + c)
    p_minus = -0.5 * math.expm1(-g)
    return (p_plus, p_minus), (0.5 * dc, -0.5 * dc)


def fisher_population_measurement(t: float, params: SpectralParams) -> float:
    """Classical FI of measuring the |+>/|-> populations of the evolved qubit."""
    if t <= 0:
        raise DomainError(f"population FI needs t > 0, got {t}")
    probs, dprobs = outcome_distribution(t, params)
    return sum(dp * dp / p for p, dp in zip(probs, dprobs) if p > 0)


def closed_form_qfi(prep, scenario: Scenario, t: float, params: SpectralParams) -> float:
    """Dispatch a preparation/bath pair to its closed-form QFI."""
    if isinstance(prep, SingleQubit):
        return qfi_single(t, params, prep.theta)
    if isinstance(prep, TwoQubitProduct):
        if scenario is Scenario.INDEPENDENT:
            return qfi_two_independent_product(t, params)
        return qfi_two_common_product(t, params)
    if isinstance(prep, TwoQubitBell):
        if scenario is Scenario.INDEPENDENT:
            return qfi_two_independent_bell(t, params)
        return qfi_two_common_bell(t, params) if prep.which.startswith("phi") else 0.0
    if isinstance(prep, Werner):
        if scenario is Scenario.COMMON and prep.which.startswith("psi"):
            return 0.0
        return qfi_werner(t, params, prep.p, scenario)
    if isinstance(prep, Ghz):
        return qfi_ghz(t, params, prep.n, scenario)
    raise TypeError(f"unknown preparation {prep!r}")
