"""Direct numerical integration of the decoherence integral.

Serves as an oracle for the closed-form decoherence factor. After the
substitution u = omega / omega_c the integral only depends on x = omega_c t:

    Gamma = int_0^inf u^(s-2) (1 - cos(u x)) exp(-u) du
"""
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConvergenceError, DomainError

GAUSS_ORDER = 20
_NODES, _WEIGHTS = leggauss(GAUSS_ORDER)


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_panels: int = 100_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_panels < 1:
            raise DomainError("max_panels must be >= 1")


DEFAULT_QUAD = QuadConfig()


def integrand(u, x: float, s: float):
    """u^(s-2) (1 - cos(u x)) e^(-u), with 1 - cos written as 2 sin^2 to avoid cancellation."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    pos = u > 0
    up = u[pos]
    out[pos] = 2.0 * np.sin(0.5 * x * up) ** 2 * np.exp((s - 2.0) * np.log(up) - up)
    return out


def truncation_point(x: float) -> float:
    return 50.0 + 10.0 * math.log1p(x)


def panel_edges(x: float) -> np.ndarray:
    """Edges at the zeros of cos(u x) below the truncation point."""
    u_max = truncation_point(x)
    first = 0.5 * math.pi / x
    if first >= u_max:
        return np.array([0.0, u_max])
    zeros = first + (math.pi / x) * np.arange(int((u_max - first) / (math.pi / x)) + 1)
    zeros = zeros[zeros < u_max]
    return np.concatenate(([0.0], zeros, [u_max]))


def _gauss(a, b, x, s):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    u = mid[:, None] + half[:, None] * _NODES[None, :]
    return half * (integrand(u, x, s) @ _WEIGHTS)


def _estimate(a, b, x, s):
    """Return (refined value, error estimate) per panel."""
    m = 0.5 * (a + b)
    coarse = _gauss(a, b, x, s)
    fine = _gauss(a, m, x, s) + _gauss(m, b, x, s)
    return fine, np.abs(fine - coarse)


def integrate_scaled(x: float, s: float, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Decoherence integral as a function of the scaled time x = omega_c t."""
    if x < 0 or s <= 0:
        raise DomainError(f"need x >= 0 and s > 0, got x={x}, s={s}")
    if x == 0:
        return 0.0
    edges = panel_edges(x)
    if edges.size - 1 > cfg.max_panels:
        raise ConvergenceError(f"x={x} needs {edges.size - 1} panels, budget {cfg.max_panels}")
    a, b = edges[:-1], edges[1:]
    val, err = _estimate(a, b, x, s)

    while True:
        total = math.fsum(val)
        target = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if err.sum() <= target:
            break
        share = target / a.size
        bad = err > share
        bad[np.argmax(err)] = True
        n_new = a.size + int(bad.sum())
        if n_new > cfg.max_panels:
            raise ConvergenceError(
                f"error {err.sum():.3e} above target {target:.3e} with {a.size} panels"
            )
        ab, bb = a[bad], b[bad]
        mb = 0.5 * (ab + bb)
        new_a = np.concatenate((a[~bad], ab, mb))
        new_b = np.concatenate((b[~bad], mb, bb))
        lv, le = _estimate(ab, mb, x, s)
        rv, re = _estimate(mb, bb, x, s)
        val = np.concatenate((val[~bad], lv, rv))
        err = np.concatenate((err[~bad], le, re))
        order = np.argsort(new_a, kind="stable")
        a, b, val, err = new_a[order], new_b[order], val[order], err[order]

    # ascending panel order for a reproducible sum
    return math.fsum(val)


def gamma_numeric(t: float, params, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Decoherence factor Gamma(t, omega_c) by quadrature of the spectral integral."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return integrate_scaled(params.omega_c * t, params.s, cfg)
