"""Time optimization of the QFI, QSNR extraction and parameter scans."""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BracketError, DomainError, NoCrossoverError, OhmicProbeError
from .parallel import ordered_map
from .probes import COMMON_BELL, INDEP_PRODUCT, SINGLE, Probe
from .qfi import closed_form_qfi, qfi_ghz, qfi_single
from .spectral import NEAR_OHMIC, SpectralParams, decoherence_factor
from .specialfn import gamma_euler
from .states import Ghz, Scenario, Werner

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

SCAN_POINTS = 200
SCAN_RANGE = (1e-3, 1e3)
X_TOL = 1e-10
# how far the scan window may be slid when the maximum sits on its edge
SLIDE_DECADES = 6
X_FLOOR, X_CEIL = 1e-30, 1e12


@dataclass(frozen=True)
class Optimum:
    t_opt: float
    h_max: float
    g: float
    r: float


@dataclass(frozen=True)
class ScanRow:
    s: float
    label: str
    omega_c: float
    t_opt: float = math.nan
    h_max: float = math.nan
    g: float = math.nan
    r: float = math.nan
    error: Optional[str] = None


def golden_section_max(f, a: float, b: float, tol: float):
    """Maximize a unimodal f on [a, b] until the bracket is narrower than tol."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    if fc >= fd:
        return c, fc
    return d, fd


def qsnr(omega_c: float, h: float) -> float:
    """R = omega_c^2 H."""
    if h < 0:
        raise DomainError(f"QFI must be >= 0, got {h}")
    return omega_c * omega_c * h


def maximize_qfi(probe: Probe, params: SpectralParams, n_scan: int = SCAN_POINTS) -> Optimum:
    """Global maximum of the QFI over interrogation time.

    Works in x = omega_c t: log-spaced scan, then golden-section refinement in log x
    between the neighbours of the best scan point.
    """
    wc = params.omega_c

    def objective(log_x):
        return wc * wc * closed_form_qfi(probe.prep, probe.scenario, math.exp(log_x) / wc, params)

    lo, hi = math.log(SCAN_RANGE[0]), math.log(SCAN_RANGE[1])
    slide = SLIDE_DECADES * math.log(10.0)
    while True:
        grid = np.linspace(lo, hi, n_scan)
        values = np.array([objective(v) for v in grid])
        # all zero: coherence already gone at the first point, the peak is further down
        i = int(np.argmax(values)) if np.any(values > 0) else 0
        if 0 < i < n_scan - 1:
            break
        if i == 0 and lo - slide >= math.log(X_FLOOR):
            lo, hi = lo - slide, hi - slide
        elif i == n_scan - 1 and hi + slide <= math.log(X_CEIL):
            lo, hi = lo + slide, hi + slide
        else:
            raise BracketError(f"no interior maximum for {probe.label}, s={params.s}")

    # relative tolerance in x is an absolute tolerance in log x
    log_x, _ = golden_section_max(objective, grid[i - 1], grid[i + 1], X_TOL)
    t_opt = math.exp(log_x) / wc
    h_max = closed_form_qfi(probe.prep, probe.scenario, t_opt, params)
    return Optimum(t_opt=t_opt, h_max=h_max, g=t_opt * wc, r=qsnr(wc, h_max))


def r_closed_form_single(s: float, g: float) -> float:
    """Single-qubit QSNR at the optimal scaled time g = G(s).

    s = 1: G^2/(1+G^2)^2. Otherwise
    (coth(gamma_s(G)) - 1) / (2 (1+G^2)^s csc^2(s atan G) / (G^2 Gamma(s)^2)).
    """
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    if g < 0:
        raise DomainError(f"g must be >= 0, got {g}")
    if g == 0:
        return 0.0
    if s == 1:
        return g * g / (1.0 + g * g) ** 2
    if abs(s - 1.0) < NEAR_OHMIC:
        # closed form is singular here; go through the quadrature-backed QFI instead
        return qfi_single(g, SpectralParams(s, 1.0))
    gam = decoherence_factor(g, s)
    csc2 = 1.0 / math.sin(s * math.atan(g)) ** 2
    denom = 2.0 * (1.0 + g * g) ** s / (g * g * gamma_euler(s) ** 2) * csc2
    return (1.0 / math.tanh(gam) - 1.0) / denom


def _scan_point(job):
    s, probe, wc = job
    try:
        opt = maximize_qfi(probe, SpectralParams(s, wc))
    except OhmicProbeError as exc:
        return ScanRow(s, probe.label, wc, error=type(exc).__name__)
    return ScanRow(s, probe.label, wc, opt.t_opt, opt.h_max, opt.g, opt.r)


def scan_s(s_grid, probes, omega_c: float = 1.0, workers=None):
    """Optimized (G, R) for every (s, probe) pair, ordered by s then probe."""
    jobs = [(float(s), probe, omega_c) for s in s_grid for probe in probes]
    for s, _, _ in jobs:
        if s <= 0:
            raise DomainError(f"s values must be positive, got {s}")
    return ordered_map(_scan_point, jobs, workers)


def _bell_advantage(s: float, omega_c: float) -> float:
    params = SpectralParams(s, omega_c)
    return maximize_qfi(COMMON_BELL, params).r - maximize_qfi(INDEP_PRODUCT, params).r


def crossover_detect(s_lo: float, s_hi: float, omega_c: float = 1.0, tol: float = 1e-3,
                     step: float = 0.05):
    """Interval of s where common-bath Bell probes beat independent product probes.

    Coarse scan of R_c^B - R_I^P with spacing <= step, then bisection of every sign
    change down to tol. Returns (start, end) of the region where the difference is positive.
    """
    if not s_lo < s_hi:
        raise DomainError(f"need s_lo < s_hi, got [{s_lo}, {s_hi}]")
    if s_lo <= 0:
        raise DomainError("s_lo must be positive")
    n = max(2, int(math.ceil((s_hi - s_lo) / step)) + 1)
    grid = np.linspace(s_lo, s_hi, n)
    diff = [_bell_advantage(s, omega_c) for s in grid]
    roots = []
    for k in range(n - 1):
        if (diff[k] > 0) == (diff[k + 1] > 0):
            continue
        a, b, fa = grid[k], grid[k + 1], diff[k]
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = _bell_advantage(m, omega_c)
            if (fm > 0) == (fa > 0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    if not roots:
        raise NoCrossoverError(f"R_c^B - R_I^P keeps its sign on [{s_lo}, {s_hi}]")
    start = roots[0] if diff[0] <= 0 else s_lo
    end = roots[-1] if diff[-1] <= 0 else s_hi
    return start, end


def werner_ratio_scan(p_grid, s: float, omega_c: float = 1.0):
    """[(p, H_I^W(t_opt) / H_c^W(t_opt))], each QFI optimized over its own time."""
    params = SpectralParams(s, omega_c)
    out = []
    for p in p_grid:
        if not 0 < p <= 1:
            raise DomainError(f"p must lie in (0, 1], got {p}")
        indep = maximize_qfi(Probe(Werner(p), Scenario.INDEPENDENT), params)
        common = maximize_qfi(Probe(Werner(p), Scenario.COMMON), params)
        out.append((p, indep.h_max / common.h_max))
    return out


@dataclass(frozen=True)
class GhzRow:
    n: int
    h_indep_opt: float
    h_common_opt: float
    n_single_opt: float
    t_match: float
    h_indep_at_match: float
    h_common_at_match: float

    @property
    def common_beats_indep(self) -> bool:
        return self.h_common_at_match > self.h_indep_at_match and self.h_common_opt > self.h_indep_opt

    @property
    def below_independent_qubits(self) -> bool:
        return self.h_indep_opt < self.n_single_opt and self.h_common_opt < self.n_single_opt


def ghz_comparison(n_grid, s: float, omega_c: float = 1.0):
    """Optimized GHZ QFIs against n independent single-qubit probes.

    The pointwise comparison uses the common-bath optimal time as the matched time.
    """
    params = SpectralParams(s, omega_c)
    single = maximize_qfi(SINGLE, params).h_max
    rows = []
    for n in n_grid:
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        indep = maximize_qfi(Probe(Ghz(n), Scenario.INDEPENDENT), params)
        common = maximize_qfi(Probe(Ghz(n), Scenario.COMMON), params)
        t = common.t_opt
        rows.append(GhzRow(
            n=n,
            h_indep_opt=indep.h_max,
            h_common_opt=common.h_max,
            n_single_opt=n * single,
            t_match=t,
            h_indep_at_match=qfi_ghz(t, params, n, Scenario.INDEPENDENT),
            h_common_at_match=qfi_ghz(t, params, n, Scenario.COMMON),
        ))
    return rows
