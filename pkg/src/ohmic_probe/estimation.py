"""Monte Carlo check of the single-qubit measurement pipeline.

The |+> probe is measured in the |+>/|-> basis M times; omega_c is recovered by
maximum likelihood (which for two outcomes is inversion of the observed
coherence) and the spread of the estimates is compared with 1/(M H).
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, InsufficientData
from .qfi import qfi_single
from .spectral import SpectralParams, decoherence, decoherence_factor, increasing_limit

X_BRACKET = (1e-8, 1e6)
X_RTOL = 1e-12
MIN_VALID_TRIALS = 50
MIN_TRIALS = 100


@dataclass(frozen=True)
class MeasurementRecord:
    m_total: int
    count_plus: int
    t: float
    s: float
    seed: int
    trial: Optional[int] = None

    def __post_init__(self):
        if self.m_total < 1:
            raise DomainError("m_total must be >= 1")
        if not 0 <= self.count_plus <= self.m_total:
            raise DomainError(f"count_plus={self.count_plus} outside [0, {self.m_total}]")

    @property
    def frequency(self) -> float:
        return self.count_plus / self.m_total


@dataclass(frozen=True)
class EstimatorTrial:
    omega_hat: Optional[float]
    true_omega_c: Optional[float] = None
    degenerate: Optional[str] = None

    @property
    def is_degenerate(self) -> bool:
        return self.degenerate is not None


@dataclass(frozen=True)
class CrbSummary:
    s: float
    omega_c: float
    t: float
    m_total: int
    n_trials: int
    seed: int
    n_valid: int
    degenerate_fraction: float
    mean_estimate: float
    variance: float
    bound: float
    ratio: float


def outcome_probabilities(t: float, params: SpectralParams):
    """(p_plus, p_minus) = ((1 + e^-Gamma)/2, (1 - e^-Gamma)/2)."""
    g = decoherence(t, params)
    p_minus = -0.5 * math.expm1(-g)
    return 1.0 - p_minus, p_minus


def _rng(seed: int, trial: Optional[int]):
    entropy = [int(seed)] if trial is None else [int(seed), int(trial)]
    return np.random.default_rng(entropy)


def simulate_measurements(t: float, params: SpectralParams, m_total: int, seed: int,
                          trial: Optional[int] = None) -> MeasurementRecord:
    """Binomial count of '+' outcomes from a PCG64 stream keyed by (seed, trial)."""
    if m_total < 1:
        raise DomainError("m_total must be >= 1")
    p_plus, _ = outcome_probabilities(t, params)
    count = int(_rng(seed, trial).binomial(m_total, p_plus))
    return MeasurementRecord(m_total, count, t, params.s, seed, trial)


def invert_decoherence(target: float, s: float):
    """Solve gamma_s(x) = target on the increasing branch by geometric bisection.

    Returns None when the target lies outside the range of gamma_s on the bracket.
    """
    lo, hi = X_BRACKET[0], min(X_BRACKET[1], increasing_limit(s))
    if not decoherence_factor(lo, s) <= target <= decoherence_factor(hi, s):
        return None
    while hi / lo - 1.0 > X_RTOL:
        mid = math.sqrt(lo * hi)
        if decoherence_factor(mid, s) < target:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


def mle_estimate(record: MeasurementRecord, true_omega_c: Optional[float] = None) -> EstimatorTrial:
    """Maximum-likelihood omega_c from a population-measurement record (s and t known)."""
    if record.t <= 0:
        raise DomainError("estimation needs t > 0")
    f = record.frequency
    if f <= 0.5:
        return EstimatorTrial(None, true_omega_c, "no-coherence")
    gamma_hat = -math.log(2.0 * f - 1.0)
    x_hat = invert_decoherence(gamma_hat, record.s)
    if x_hat is None:
        reason = "boundary" if gamma_hat < decoherence_factor(X_BRACKET[0], record.s) else "saturated"
        return EstimatorTrial(None, true_omega_c, reason)
    return EstimatorTrial(x_hat / record.t, true_omega_c)


def crb_experiment(params: SpectralParams, t: float, m_total: int, n_trials: int,
                   seed: int) -> CrbSummary:
    """Repeat simulate + estimate and compare the estimator variance with 1/(M H)."""
    if n_trials < MIN_TRIALS:
        raise DomainError(f"n_trials must be >= {MIN_TRIALS}")
    estimates = []
    for k in range(n_trials):
        rec = simulate_measurements(t, params, m_total, seed, trial=k)
        trial = mle_estimate(rec, params.omega_c)
        if not trial.is_degenerate:
            estimates.append(trial.omega_hat)
    if len(estimates) < MIN_VALID_TRIALS:
        raise InsufficientData(
            f"only {len(estimates)} of {n_trials} trials gave a finite estimate"
        )
    est = np.array(estimates)
    variance = float(est.var(ddof=1))
    bound = 1.0 / (m_total * qfi_single(t, params))
    return CrbSummary(
        s=params.s,
        omega_c=params.omega_c,
        t=t,
        m_total=m_total,
        n_trials=n_trials,
        seed=seed,
        n_valid=len(estimates),
        degenerate_fraction=1.0 - len(estimates) / n_trials,
        mean_estimate=float(est.mean()),
        variance=variance,
        bound=bound,
        ratio=variance / bound,
    )
