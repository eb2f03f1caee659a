"""Acceptance criteria, one test per criterion; each prints a single PASS/FAIL line."""
import time

import numpy as np

from ohmic_probe.estimation import crb_experiment
from ohmic_probe.optimize import (
    crossover_detect,
    ghz_comparison,
    maximize_qfi,
    scan_s,
    werner_ratio_scan,
)
from ohmic_probe.probes import COMMON_BELL, FOUR_SCHEMES, SINGLE, parse_probe
from ohmic_probe.qfi import (
    SeriesKind,
    closed_form_qfi,
    fisher_population_measurement,
    qfi_numeric,
    qfi_single,
    qfi_small_t_series,
    qfi_two_independent_bell,
    qfi_two_independent_product,
    state_family,
)
from ohmic_probe.quadrature import integrate_scaled
from ohmic_probe.spectral import SpectralParams, decoherence_factor
from ohmic_probe.states import Ghz, Scenario, SingleQubit, TwoQubitBell, TwoQubitProduct, Werner

# large-s limit of the single-qubit QSNR: max_y y^2/(e^y - 1), attained at y = 2 + W(-2/e^2)
R_LIMIT = 0.6476102378919


def test_ac1_closed_form_vs_quadrature(acceptance_report):
    start = time.perf_counter()
    xs = np.geomspace(0.01, 20, 500)
    worst = 0.0
    for s in (0.25, 0.5, 1, 1.5, 2, 3, 5):
        for x in xs:
            closed = decoherence_factor(float(x), s)
            numeric = integrate_scaled(float(x), s)
            worst = max(worst, abs(closed - numeric) / abs(numeric))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed <= 30
    acceptance_report(1, "closed form vs quadrature", ok, f"max_rel={worst:.2e} time={elapsed:.1f}s")
    assert ok


def test_ac2_oracle_qfi_equivalence(acceptance_report):
    preps = [
        (SingleQubit(), Scenario.INDEPENDENT),
        (TwoQubitProduct(), Scenario.INDEPENDENT),
        (TwoQubitBell("phi+"), Scenario.INDEPENDENT),
        (TwoQubitProduct(), Scenario.COMMON),
        (TwoQubitBell("phi+"), Scenario.COMMON),
    ]
    preps += [(Werner(p), sc) for p in (0.3, 0.7, 1.0) for sc in Scenario]
    preps += [(Ghz(n), sc) for n in (1, 2, 3) for sc in Scenario]
    start = time.perf_counter()
    worst = 0.0
    for s in (0.5, 1, 2, 3):
        for wc in (0.5, 1, 2):
            params = SpectralParams(s, wc)
            for k in (0.3, 1, 3):
                t = k / wc
                for prep, sc in preps:
                    closed = closed_form_qfi(prep, sc, t, params)
                    numeric = qfi_numeric(state_family(prep, sc, t, s), wc)
                    worst = max(worst, abs(closed - numeric) / abs(closed))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-5 and elapsed <= 60
    acceptance_report(2, "closed-form QFI vs eigendecomposition", ok,
                      f"max_rel={worst:.2e} time={elapsed:.1f}s")
    assert ok


def test_ac3_ohmic_analytic_optimum(acceptance_report):
    worst = 0.0
    for wc in (0.5, 1, 4):
        opt = maximize_qfi(SINGLE, SpectralParams(1, wc))
        worst = max(worst, abs(opt.t_opt * wc - 1), abs(opt.r / 0.25 - 1))
    ok = worst <= 1e-6
    acceptance_report(3, "s=1 optimum t=1/omega_c, R=1/4", ok, f"max_rel={worst:.2e}")
    assert ok


def test_ac4_scaling_laws(acceptance_report):
    probes = [SINGLE, *FOUR_SCHEMES, parse_probe("indep-werner:0.5"), parse_probe("common-werner:0.5"),
              parse_probe("indep-ghz:3"), parse_probe("common-ghz:3")]
    worst = 0.0
    for probe in probes:
        for s in (0.5, 2, 3):
            opts = [(wc, maximize_qfi(probe, SpectralParams(s, wc))) for wc in (0.5, 0.8, 1, 2, 5)]
            g = [o.t_opt * wc for wc, o in opts]
            r = [o.h_max * wc**2 for wc, o in opts]
            for vals in (g, r):
                worst = max(worst, max(vals) / min(vals) - 1)
    ok = worst < 1e-6
    acceptance_report(4, "t_opt*omega_c and omega_c^2*h_max independent of omega_c", ok,
                      f"max_rel_spread={worst:.2e}")
    assert ok


def test_ac5_configuration_ordering(acceptance_report):
    rows = scan_s([0.5, 1, 2, 3], FOUR_SCHEMES)
    r = {(row.s, row.label): row.r for row in rows}
    product_best = all(
        r[(s, "indep-product")] > r[(s, other.label)]
        for s in (0.5, 1.0, 3.0)
        for other in FOUR_SCHEMES[1:]
    )
    bell_wins_at_2 = r[(2.0, "common-bell")] > r[(2.0, "indep-product")]
    lo, hi = crossover_detect(1.0, 3.0, 1.0, 1e-3)
    interval = abs(lo - 1.35) <= 0.05 and abs(hi - 2.3) <= 0.05
    ok = product_best and bell_wins_at_2 and interval
    acceptance_report(5, "configuration ordering and crossover", ok,
                      f"product_best={product_best} bell_wins_s2={bell_wins_at_2} "
                      f"crossover=({lo:.4f}, {hi:.4f})")
    assert ok


def test_ac6_werner_ratio(acceptance_report):
    worst_ratio, worst_bell = 0.0, 0.0
    for s in (0.5, 1, 3):
        ratios = werner_ratio_scan([0.2, 0.5, 0.8, 1.0], s)
        worst_ratio = max(worst_ratio, max(q for _, q in ratios))
        params = SpectralParams(s, 1)
        bell = maximize_qfi(parse_probe("indep-bell"), params).h_max / maximize_qfi(COMMON_BELL, params).h_max
        worst_bell = max(worst_bell, abs(ratios[-1][1] - bell) / bell)
    ok = worst_ratio < 1 and worst_bell <= 1e-10
    acceptance_report(6, "Werner independent/common ratio below one", ok,
                      f"max_ratio={worst_ratio:.4f} p1_vs_bell={worst_bell:.1e}")
    assert ok


def test_ac7_ghz_claims(acceptance_report):
    failures = []
    for s in (0.5, 1, 3):
        for row in ghz_comparison(range(2, 7), s):
            if not (row.common_beats_indep and row.below_independent_qubits):
                failures.append((s, row.n))
    ok = not failures
    acceptance_report(7, "GHZ common > independent, both below n single qubits", ok,
                      f"failures={failures}")
    assert ok


def test_ac8_small_t_series(acceptance_report):
    t = 1e-2
    ratios = []
    for s in (0.5, 1, 3):
        params = SpectralParams(s, 1)
        for exact, kind in ((qfi_two_independent_product, SeriesKind.INDEPENDENT_PRODUCT),
                            (qfi_two_independent_bell, SeriesKind.INDEPENDENT_BELL)):
            e1 = abs(exact(t, params) - qfi_small_t_series(t, params, kind))
            e2 = abs(exact(t / 2, params) - qfi_small_t_series(t / 2, params, kind))
            ratios.append(e1 / e2)
    ok = all(abs(q / 64 - 1) <= 0.2 for q in ratios)
    acceptance_report(8, "series error scales as t^6", ok,
                      f"ratios=[{min(ratios):.2f}, {max(ratios):.2f}]")
    assert ok


def test_ac9_population_measurement(acceptance_report):
    worst = 0.0
    points = [(s, wc, k / wc) for s in (0.5, 1, 2, 3, 5) for wc in (0.5, 2)
              for k in np.geomspace(0.05, 20, 10)]
    assert len(points) == 100
    for s, wc, t in points:
        params = SpectralParams(s, wc)
        h = qfi_single(t, params)
        worst = max(worst, abs(fisher_population_measurement(t, params) - h) / h)
    ok = worst <= 1e-12
    acceptance_report(9, "population-measurement FI equals QFI", ok, f"max_rel={worst:.2e}")
    assert ok


def test_ac10_crb_saturation(acceptance_report):
    start = time.perf_counter()
    params = SpectralParams(1, 1)
    t_opt = maximize_qfi(SINGLE, params).t_opt
    at_opt = crb_experiment(params, t_opt, 10**4, 10**3, seed=12345)
    off = [crb_experiment(params, k * t_opt, 10**4, 10**3, seed=12345) for k in (0.2, 0.5, 2, 5)]
    elapsed = time.perf_counter() - start
    saturated = 0.9 <= at_opt.ratio <= 1.2
    bounded = all(o.ratio >= 0.9 for o in off)
    ok = saturated and bounded and elapsed <= 120
    acceptance_report(10, "Cramer-Rao saturation at t_opt", ok,
                      f"ratio={at_opt.ratio:.3f} off=[{', '.join(f'{o.ratio:.3f}' for o in off)}] "
                      f"time={elapsed:.1f}s")
    assert ok


def test_ac11_single_qubit_qsnr_shape(acceptance_report):
    s_grid = list(np.geomspace(0.2, 10, 60))
    r = np.array([row.r for row in scan_s(s_grid, [SINGLE])])
    signs = np.sign(np.diff(r))
    changes = int(np.count_nonzero(np.diff(signs)))
    i_min = int(np.argmin(r))
    single_min = changes == 1 and 0 < i_min < len(r) - 1
    decreasing_first = signs[0] < 0
    plateau = abs(r[-1] / R_LIMIT - 1) <= 1e-3 and abs(r[-1] / r[-2] - 1) <= 1e-3
    ok = single_min and decreasing_first and plateau
    acceptance_report(11, "R(s) has one interior minimum then saturates", ok,
                      f"s_min={s_grid[i_min]:.3f} R_min={r[i_min]:.4f} R(10)={r[-1]:.5f}")
    assert ok
