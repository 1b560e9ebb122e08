"""Acceptance gate: every criterion at its stated tolerance.

Each test records its sub-checks in the acceptance log; the terminal summary
prints one PASS/FAIL line per criterion followed by the measured values.
"""
import math

import numpy as np
import pytest
from scipy import integrate

from vibshock import Signal, io, metrics, models, oracles, power_signal, rms
from vibshock.metrics import (
    cumulative_energy_analysis,
    energy_step,
    excess_kurtosis,
    fit_energy_step,
    threshold_count_vsi,
    wms_analysis,
)

from conftest import A_C, F_C, RATE, make_pulses

TITLES = {
    "C1": "model-signal fidelity",
    "C2": "excess kurtosis targets",
    "C3": "cumulative-energy VSI/VSL",
    "C4": "WMS VSI/VSL (K = 2)",
    "C5": "threshold-count VSI",
    "C6": "analytic-oracle agreement of cumulative curves",
    "C7": "property suite",
    "C8": "energy-step estimator",
}

WGN_SEEDS = range(10)
WGN_N = 1_000_000


@pytest.fixture(scope="module")
def log(acceptance_log):
    acceptance_log.titles.update(TITLES)
    return acceptance_log


@pytest.fixture(scope="module")
def wgn_family():
    return [models.gen_wgn(1.0, RATE, WGN_N / RATE, seed) for seed in WGN_SEEDS]


def within_rel(value, target, rel):
    return abs(value - target) <= rel * abs(target)


def within_abs(value, target, tol):
    return abs(value - target) <= tol


def check(log, criterion, name, value, target, passed):
    return log.record(criterion, name, float(value), target, passed)


def assert_all(results):
    assert all(results), "one or more sub-checks out of tolerance (see acceptance summary)"


# ---- C1 ---------------------------------------------------------------------

def test_c1_model_signal_fidelity(log, harmonic, pulses):
    h_rms, h_peak = rms(harmonic), np.max(np.abs(harmonic.samples))
    p_rms, p_peak = rms(pulses), np.max(np.abs(pulses.samples))
    assert_all([
        check(log, "C1", "harmonic RMS", h_rms, "1.0 ± 0.1 %", within_rel(h_rms, 1.0, 1e-3)),
        check(log, "C1", "harmonic peak", h_peak, "1.41 ± 0.5 %", within_rel(h_peak, 1.41, 5e-3)),
        check(log, "C1", "pulsed peak", p_peak, "5.78 ± 0.5 %", within_rel(p_peak, 5.78, 5e-3)),
        check(log, "C1", "pulsed RMS", p_rms, "1.0 ± 1 %", within_rel(p_rms, 1.0, 1e-2)),
    ])


# ---- C2 ---------------------------------------------------------------------

def test_c2_kurtosis(log, harmonic, pulses, wgn):
    k_h = excess_kurtosis(power_signal(harmonic))
    k_p = excess_kurtosis(power_signal(pulses))
    k_dense = excess_kurtosis(power_signal(make_pulses(0.01)))
    assert len(wgn) == WGN_N
    k_w = excess_kurtosis(power_signal(wgn))
    assert_all([
        check(log, "C2", "harmonic", k_h, "-1.5 ± 0.02", within_abs(k_h, -1.5, 0.02)),
        check(log, "C2", "pulsed T_p=0.1", k_p, "35.6 ± 5 %", within_rel(k_p, 35.6, 0.05)),
        check(log, "C2", "pulsed T_p=0.01", k_dense, "-0.23 ± 0.05", within_abs(k_dense, -0.23, 0.05)),
        check(log, "C2", "squared WGN, N=1e6, seed 0", k_w, "12 ± 0.5", within_abs(k_w, 12.0, 0.5)),
    ])


# ---- C3 ---------------------------------------------------------------------

def test_c3_cumulative_energy(log, harmonic, pulses, wgn_family):
    assert metrics.default_threshold_ratio() == 0.5 - 1 / math.pi
    h = cumulative_energy_analysis(harmonic)
    p = cumulative_energy_analysis(pulses)
    w = np.mean([cumulative_energy_analysis(s).vsi for s in wgn_family[:5]])
    assert_all([
        check(log, "C3", "harmonic VSI", h.vsi, "1.00 ± 0.01", within_abs(h.vsi, 1.0, 0.01)),
        check(log, "C3", "harmonic VSL", h.vsl, "1.0 ± 1 %", within_rel(h.vsl, 1.0, 0.01)),
        check(log, "C3", "pulsed VSI", p.vsi, "17.7 ± 5 %", within_rel(p.vsi, 17.7, 0.05)),
        check(log, "C3", "pulsed VSL", p.vsl, "2.4 ± 5 %", within_rel(p.vsl, 2.4, 0.05)),
        check(log, "C3", "WGN VSI, mean of 5 seeds", w, "2.0 ± 0.1", within_abs(w, 2.0, 0.1)),
    ])


# ---- C4 ---------------------------------------------------------------------

def test_c4_wms(log, harmonic, pulses, wgn):
    h, p, w = wms_analysis(harmonic, 2.0), wms_analysis(pulses, 2.0), wms_analysis(wgn, 2.0)
    exact = math.sqrt(5 / 3)
    assert oracles.harmonic_wms_vsi(2.0) == pytest.approx(exact, rel=1e-14)
    assert_all([
        check(log, "C4", "harmonic VSI", h.vsi, "sqrt(5/3) ± 0.005", within_abs(h.vsi, exact, 0.005)),
        check(log, "C4", "harmonic VSL", h.vsl, "1.29 ± 1 %", within_rel(h.vsl, 1.29, 0.01)),
        check(log, "C4", "pulsed VSI", p.vsi, "5.1 ± 5 %", within_rel(p.vsi, 5.1, 0.05)),
        check(log, "C4", "pulsed VSL", p.vsl, "5.1 ± 5 %", within_rel(p.vsl, 5.1, 0.05)),
        check(log, "C4", "WGN VSI", w.vsi, "2.2 ± 0.1", within_abs(w.vsi, 2.2, 0.1)),
    ])


# ---- C5 ---------------------------------------------------------------------

def test_c5_threshold_count(log, harmonic, pulses, wgn_family):
    h = threshold_count_vsi(power_signal(harmonic), 0.5)
    p = threshold_count_vsi(power_signal(pulses), 0.5)
    w = np.array([threshold_count_vsi(power_signal(s), 0.5) for s in wgn_family])
    cv = np.std(w) / np.mean(w)
    assert_all([
        check(log, "C5", "harmonic", h, "1.0 ± 0.01", within_abs(h, 1.0, 0.01)),
        check(log, "C5", "pulsed", p, "47 ± 20 %", within_rel(p, 47.0, 0.20)),
        check(log, "C5", f"WGN min over {len(w)} seeds", w.min(), "> 100", w.min() > 100),
        check(log, "C5", "WGN cross-seed CV", cv, "> 0.5", cv > 0.5),
    ])


# ---- C6 ---------------------------------------------------------------------

def test_c6_cumulative_curves(log, harmonic, pulses):
    _, w_hat = metrics.sorted_cumulative_energy(harmonic)
    n = w_hat.size
    x = np.arange(1, n + 1) / n
    sup = np.max(np.abs(w_hat - oracles.harmonic_cumulative_curve(x)))
    # vertical distance to (0.9, 0.8) along the empirical curve
    near = abs(np.interp(0.9, x, w_hat) - 0.8)
    curve = io.export_cumulative_curve(pulses, len(pulses))
    x08 = curve.x[np.searchsorted(curve.y, 0.8)]
    assert_all([
        check(log, "C6", "harmonic sup-norm vs closed form", sup, "< 0.005", sup < 0.005),
        check(log, "C6", "harmonic curve distance from (0.9, 0.8)", near, "< 0.01", near < 0.01),
        check(log, "C6", "pulsed x where y = 0.8", x08, "0.994 ± 0.002", within_abs(x08, 0.994, 0.002)),
    ])


# ---- C7 ---------------------------------------------------------------------

def _indices(s):
    p = power_signal(s)
    return np.array([excess_kurtosis(p), threshold_count_vsi(p, 0.5),
                     cumulative_energy_analysis(s).vsi, wms_analysis(s, 2.0).vsi])


def _levels(s):
    return np.array([rms(s), cumulative_energy_analysis(s).vsl, wms_analysis(s, 2.0).vsl])


ALPHAS = (-3.0, 1e-4, 0.37, 250.0, -1e3)


def test_c7_scale_invariance(log, harmonic, pulses, wgn):
    inv, eqv = 0.0, 0.0
    for s in (harmonic, pulses, wgn):
        base_i, base_l = _indices(s), _levels(s)
        for alpha in ALPHAS:
            scaled = s.scaled(alpha)
            inv = max(inv, np.max(np.abs(_indices(scaled) - base_i) / np.abs(base_i)))
            eqv = max(eqv, np.max(np.abs(_levels(scaled) - abs(alpha) * base_l) / (abs(alpha) * base_l)))
    assert_all([
        check(log, "C7", "VSI scale invariance, max rel. deviation", inv, "<= 1e-10", inv <= 1e-10),
        check(log, "C7", "VSL/RMS scale equivariance, max rel. deviation", eqv, "<= 1e-10", eqv <= 1e-10),
    ])


def test_c7_monotone_in_separation(log):
    vsi, kurt = [], []
    for T_p in (0.01, 0.03, 0.1, 0.3):
        s = make_pulses(T_p)
        vsi.append(cumulative_energy_analysis(s).vsi)
        kurt.append(excess_kurtosis(power_signal(s)))
    vsi_ok = all(b > a for a, b in zip(vsi, vsi[1:]))
    kurt_ok = all(b > a for a, b in zip(kurt, kurt[1:]))
    assert_all([
        log.record("C7", "cumulative VSI over T_p = 0.01, 0.03, 0.1, 0.3",
                   ", ".join(f"{v:.4g}" for v in vsi), "strictly increasing", vsi_ok),
        log.record("C7", "kurtosis over T_p = 0.01, 0.03, 0.1, 0.3",
                   ", ".join(f"{v:.4g}" for v in kurt), "strictly increasing", kurt_ok),
    ])


def test_c7_permutation_invariance(log, pulses, wgn):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for s in (pulses, wgn):
        shuffled = Signal(rng.permutation(s.samples), s.sample_rate)
        a, b = _indices(s), _indices(shuffled)
        worst = max(worst, np.max(np.abs(a - b) / np.abs(a)))
    step = energy_step(pulses)
    shuffled_step = energy_step(Signal(rng.permutation(pulses.samples), pulses.sample_rate))
    change = abs(shuffled_step - step) / step
    assert_all([
        check(log, "C7", "order-statistic/moment VSIs under shuffling, max rel. change", worst,
              "<= 1e-10", worst <= 1e-10),
        check(log, "C7", "energy step under shuffling, rel. change", change, "> 0.1 (must change)",
              change > 0.1),
    ])


def test_c7_outlier_contrast(log, wgn):
    a = wgn.samples[:1_000_000]
    spiked = np.append(a, 100 * np.max(np.abs(a)))
    before, after = Signal(a, wgn.sample_rate), Signal(spiked, wgn.sample_rate)
    c0, c1 = cumulative_energy_analysis(before).vsi, cumulative_energy_analysis(after).vsi
    t0 = threshold_count_vsi(power_signal(before))
    t1 = threshold_count_vsi(power_signal(after))
    cum_change = abs(c1 - c0) / c0
    assert_all([
        check(log, "C7", "100x outlier: cumulative VSI rel. change", cum_change, "< 1 %",
              cum_change < 0.01),
        check(log, "C7", "100x outlier: threshold-count VSI ratio", t1 / t0, "> 10", t1 / t0 > 10),
    ])


def test_c7_convergence(log):
    def spread(n):
        return float(np.std([cumulative_energy_analysis(models.gen_wgn(1.0, float(n), 1.0, seed)).vsi
                             for seed in range(100, 105)]))

    small, large = spread(10**5), spread(10**7)
    assert_all([
        log.record("C7", "WGN cumulative VSI std over 5 seeds, N=1e5 vs N=1e7",
                   f"{small:.3g} vs {large:.3g}", "N=1e7 smaller", large < small),
    ])


def test_c7_report_round_trip(log, pulses, tmp_path):
    cfg = metrics.AnalysisConfig()
    report = io.Report(source="pulses", sample_rate_hz=pulses.sample_rate, n_samples=len(pulses),
                       config=cfg, results={"a": metrics.analyze(pulses, cfg)},
                       metadata={"seed": None})
    path = tmp_path / "r.json"
    path.write_text(report.dumps())
    back = io.Report.loads(path.read_text())
    same = back == report and back.dumps() == report.dumps()
    assert_all([log.record("C7", "JSON report round-trip", "identical" if same else "differs",
                           "field-for-field identity", same)])


# ---- C8 ---------------------------------------------------------------------

def test_c8_staircase_and_constant(log):
    stairs = fit_energy_step(np.repeat(np.arange(1000.0), 100))
    flat = energy_step(Signal(np.full(500_000, 1.7), RATE))
    assert_all([
        check(log, "C8", "ideal staircase, unit steps", stairs, "1.0 ± 1 %", within_rel(stairs, 1.0, 0.01)),
        check(log, "C8", "constant power", flat, "<= 1e-10", flat <= 1e-10),
    ])


def test_c8_pulsed_energy_step(log, pulses):
    p = models.PulseTrainParams(F_C, 0.1, A_C)

    def a2(u):
        return (p.A_p * (u + p.t_p) * (u - p.t_p) / p.t_p**4 * math.exp(-u * u / (2 * p.t_p**2))) ** 2

    single = integrate.quad(a2, -20 * p.t_p, 20 * p.t_p, epsabs=0, epsrel=1e-12, limit=200)[0]
    assert single == pytest.approx(oracles.pulse_energy(p.A_p, p.t_p), rel=1e-10)
    step = energy_step(pulses)
    assert_all([
        check(log, "C8", f"pulsed ΔW / single-pulse energy ({single:.5g})", step / single,
              "1 ± 5 %", within_rel(step, single, 0.05)),
    ])
