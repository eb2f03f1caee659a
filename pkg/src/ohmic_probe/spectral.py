"""Ohmic-family spectral density and the closed-form decoherence factor.

All time dependence enters through the scaled time x = omega_c * t, so
gamma_s(x) below is the decoherence factor and Gamma(t, omega_c) = gamma_s(omega_c t).
"""
import math
from dataclasses import dataclass

from .errors import DomainError
from .quadrature import integrate_scaled
from .specialfn import gamma_euler

# |s - 1| below this: the s != 1 closed form is a 0 * inf product, use quadrature instead
NEAR_OHMIC = 1e-4


@dataclass(frozen=True)
class SpectralParams:
    s: float
    omega_c: float

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise DomainError(f"Ohmicity s must be positive, got {self.s}")
        if not (self.omega_c > 0 and math.isfinite(self.omega_c)):
            raise DomainError(f"cutoff omega_c must be positive, got {self.omega_c}")


def _check(x, s):
    if not x >= 0:
        raise DomainError(f"scaled time must be >= 0, got {x}")
    if not s > 0:
        raise DomainError(f"Ohmicity s must be positive, got {s}")


def spectral_density(omega: float, params: SpectralParams) -> float:
    """J(omega) = omega^s omega_c^(1-s) exp(-omega/omega_c)."""
    if omega < 0:
        raise DomainError(f"omega must be >= 0, got {omega}")
    s, wc = params.s, params.omega_c
    if omega == 0:
        return 0.0
    return omega**s * wc ** (1.0 - s) * math.exp(-omega / wc)


def decoherence_factor(x: float, s: float) -> float:
    """gamma_s(x): 1/2 log(1+x^2) for s = 1, otherwise

        (1 - cos[(s-1) atan x] / (1+x^2)^((s-1)/2)) * Gamma(s-1)

    with Gamma continued to negative arguments for sub-Ohmic s.
    """
    _check(x, s)
    if x == 0:
        return 0.0
    if s == 1:
        return 0.5 * math.log1p(x * x)
    if abs(s - 1.0) < NEAR_OHMIC:
        return integrate_scaled(x, s)
    a = (s - 1.0) * math.atan(x)
    log_scale = -0.5 * (s - 1.0) * math.log1p(x * x)
    ratio = math.cos(a) * math.exp(log_scale)
    if ratio > 0.5:
        # 1 - ratio loses digits when ratio ~ 1; go through logs instead
        bracket = -math.expm1(math.log1p(-2.0 * math.sin(0.5 * a) ** 2) + log_scale)
    else:
        bracket = 1.0 - ratio
    return bracket * gamma_euler(s - 1.0)


def decoherence_factor_dx(x: float, s: float) -> float:
    """d gamma_s / dx.

    Differentiating the s != 1 closed form and writing x = tan(phi) gives
    Gamma(s-1)(s-1)(1+x^2)^(-(s+1)/2) [sin a + x cos a] = Gamma(s) sin(s phi) (1+x^2)^(-s/2),
    which is also correct at s = 1 (x / (1+x^2)).
    """
    _check(x, s)
    if x == 0:
        return 0.0
    return gamma_euler(s) * math.sin(s * math.atan(x)) * math.exp(-0.5 * s * math.log1p(x * x))


def decoherence(t: float, params: SpectralParams) -> float:
    """Gamma(t, omega_c)."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return decoherence_factor(params.omega_c * t, params.s)


def decoherence_factor_dwc(t: float, params: SpectralParams) -> float:
    """d Gamma / d omega_c = t * gamma_s'(omega_c t)."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return t * decoherence_factor_dx(params.omega_c * t, params.s)


def increasing_limit(s: float) -> float:
    """Upper end of the interval on which gamma_s is strictly increasing.

    gamma_s' vanishes first at s * atan(x) = pi, i.e. x = tan(pi/s) for s > 2.
    """
    if s <= 2:
        return math.inf
    return math.tan(math.pi / s)
