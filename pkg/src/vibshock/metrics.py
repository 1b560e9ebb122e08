"""Shock index (VSI) and shock level (VSL) estimators.

Every estimator works on the power signal P_n = a_n². The index estimators are
dimensionless and unchanged when the signal is rescaled; the level estimators
carry the units of the acceleration.

Two definitions are recommended for use: :func:`cumulative_energy_analysis`
(sorted-power cumulative energy) and :func:`wms_analysis` (weighted mean
square). The others are kept for comparison. :func:`threshold_count_vsi`
depends on the signal maximum and is therefore fragile against outliers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .signal import PowerSignal, Signal, power_signal, rms

METHODS = ("kurtosis", "threshold_count", "energy_step", "cumulative", "wms")


class EstimatorError(ValueError):
    """An estimator's preconditions are not met by the input."""


def default_threshold_ratio() -> float:
    """Cumulative-energy threshold at which a harmonic signal has VSI = 1."""
    return 0.5 - 1.0 / math.pi


#: Alternative cumulative-energy threshold: half the total energy.
HALF_ENERGY_RATIO = 0.5


@dataclass(frozen=True)
class CumulativeEnergyResult:
    vsi: float
    vsl: float
    M: int
    N: int
    threshold_ratio: float
    w_tot: float


@dataclass(frozen=True)
class WmsResult:
    vsi: float
    vsl: float
    rms: float
    K: float


@dataclass(frozen=True)
class AnalysisConfig:
    threshold_ratio: float = field(default_factory=default_threshold_ratio)
    K: float = 2.0
    max_fraction: float = 0.5
    methods: tuple = METHODS

    def __post_init__(self):
        if not 0 < self.threshold_ratio < 1:
            raise ValueError(f"threshold_ratio must be in (0, 1), got {self.threshold_ratio}")
        if not 0 < self.max_fraction < 1:
            raise ValueError(f"max_fraction must be in (0, 1), got {self.max_fraction}")
        if not (math.isfinite(self.K) and self.K >= 0):
            raise ValueError(f"K must be a finite number >= 0, got {self.K}")
        methods = tuple(self.methods)
        unknown = sorted(set(methods) - set(METHODS))
        if unknown:
            raise ValueError(f"unknown methods {unknown}; choose from {list(METHODS)}")
        # canonical order, no duplicates
        object.__setattr__(self, "methods", tuple(m for m in METHODS if m in methods))


@dataclass(frozen=True)
class ShockAnalysis:
    """All estimator outputs for one channel.

    Estimators that were not requested, or that rejected the input, are None;
    rejections are listed in ``errors`` keyed by method name.
    """

    rms: float
    kurtosis_vsi: float | None = None
    threshold_count_vsi: float | None = None
    energy_step: float | None = None
    cumulative: CumulativeEnergyResult | None = None
    wms: WmsResult | None = None
    errors: dict = field(default_factory=dict)


def _power(x):
    return x if isinstance(x, PowerSignal) else power_signal(x)


def excess_kurtosis(p: PowerSignal) -> float:
    """Fourth standardised moment of the power samples minus 3 (population moments)."""
    p = _power(p)
    if len(p) < 4:
        raise EstimatorError("excess kurtosis needs at least 4 samples")
    scale = float(np.max(p.samples))
    if scale <= 0:
        raise EstimatorError("power signal is identically zero (zero variance); excess kurtosis is undefined")
    # the ratio is scale-free; normalising keeps m2**2 clear of underflow
    _, m2, m4 = kernels.central_moments(p.samples / scale)
    # a constant signal leaves only rounding noise in m2
    if m2 <= 1e-28:
        raise EstimatorError("power signal has zero variance; excess kurtosis is undefined")
    return m4 / (m2 * m2) - 3.0


def threshold_count_vsi(p: PowerSignal, max_fraction: float = 0.5) -> float:
    """Ratio of samples below to samples at/above ``max_fraction * max(P)``."""
    p = _power(p)
    if not 0 < max_fraction < 1:
        raise ValueError(f"max_fraction must be in (0, 1), got {max_fraction}")
    peak = float(np.max(p.samples))
    if peak == 0:
        raise EstimatorError("all-zero power signal has no threshold")
    threshold = max_fraction * peak
    n_low = int(np.count_nonzero(p.samples < threshold))
    n_high = len(p) - n_low
    if n_high == 0:
        raise EstimatorError("no samples at or above the threshold")
    return n_low / n_high


def cumulative_energy(p: PowerSignal) -> np.ndarray:
    """Running energy W(t_n) = Δt Σ_{m<=n} P_m in time order (m²/s³)."""
    p = _power(p)
    return kernels.compensated_cumsum(p.samples) * p.dt


def fit_energy_step(energy, dt: float = 1.0) -> float:
    """Effective step height of a staircase-like energy curve.

    Fits a straight line (slope and intercept) to ``energy`` sampled every
    ``dt`` and converts the mean squared residual to a step height through
    MSE = ΔW²/12, which holds exactly for an ideal staircase.
    """
    w = np.asarray(energy, dtype=np.float64)
    n = w.size
    if n < 3:
        raise EstimatorError("energy step needs at least 3 samples")
    # centred abscissa; dt only scales the slope, not the residuals
    t = (np.arange(n) - (n - 1) / 2.0) * dt
    wc = w - kernels.neumaier_sum(w) / n
    slope = kernels.neumaier_sum(t * wc) / kernels.neumaier_sum(t * t)
    resid = wc - slope * t
    mse = kernels.neumaier_sum(resid * resid) / n
    return math.sqrt(12.0 * mse)


def energy_step(s: Signal) -> float:
    """Energy step ΔW (m²/s³) of the signal's time-ordered cumulative energy."""
    p = _power(s)
    return fit_energy_step(cumulative_energy(p), p.dt)


def sorted_cumulative_energy(p: PowerSignal) -> tuple[np.ndarray, np.ndarray]:
    """Ascending power samples and their normalised partial sums Ŵ_1..Ŵ_N.

    Ŵ is normalised by the N-th partial sum, so Ŵ_N == 1 exactly.
    """
    p = _power(p)
    ordered = np.sort(p.samples, kind="stable")
    prefix = kernels.compensated_cumsum(ordered)
    total = prefix[-1]
    if total <= 0:
        raise EstimatorError("signal has zero energy")
    return ordered, prefix / total


def cumulative_energy_analysis(s: Signal, threshold_ratio: float | None = None) -> CumulativeEnergyResult:
    """Cumulative energy of the sorted power signal.

    M is the largest index with Ŵ_M < threshold_ratio (0 if none), the index
    is VSI = M / (N - M) and the level is the square root of the (M+1)-th
    smallest power sample, i.e. the first sample whose inclusion reaches the
    threshold.
    """
    if threshold_ratio is None:
        threshold_ratio = default_threshold_ratio()
    if not 0 < threshold_ratio < 1:
        raise ValueError(f"threshold_ratio must be in (0, 1), got {threshold_ratio}")
    p = _power(s)
    n = len(p)
    if n < 2:
        raise EstimatorError("cumulative energy analysis needs at least 2 samples")
    ordered = np.sort(p.samples, kind="stable")
    m, total = kernels.count_below_normalized(ordered, threshold_ratio)
    if total <= 0:
        raise EstimatorError("signal has zero energy")
    if m >= n:
        raise EstimatorError("threshold not reached by the total energy")
    return CumulativeEnergyResult(
        vsi=m / (n - m),
        vsl=math.sqrt(ordered[m]),
        M=int(m),
        N=n,
        threshold_ratio=float(threshold_ratio),
        w_tot=total * p.dt,
    )


def wms_analysis(s: Signal, K: float = 2.0) -> WmsResult:
    """Root weighted mean square with weights P^K, and its ratio to the RMS.

    WMS(K) = Σ P^(K+1) / Σ P^K. Power is normalised by its maximum before
    exponentiation so large K cannot overflow.
    """
    if not (math.isfinite(K) and K >= 0):
        raise ValueError(f"K must be a finite number >= 0, got {K}")
    p = _power(s)
    peak = float(np.max(p.samples))
    if peak == 0:
        raise EstimatorError("all-zero signal: weighted mean square is undefined")
    q = p.samples / peak
    num, den = kernels.weighted_power_sums(q, float(K))
    if den == 0:
        raise EstimatorError("weight sum underflowed to zero; reduce K")
    ms = kernels.neumaier_sum(q) / len(q)
    vsl = math.sqrt(peak * num / den)
    level = math.sqrt(peak * ms)
    return WmsResult(vsi=vsl / level, vsl=vsl, rms=level, K=float(K))


def ahv(rms_x: float, rms_y: float, rms_z: float) -> float:
    """Vibration total value: Euclidean norm of the three axis RMS values."""
    values = (rms_x, rms_y, rms_z)
    if any(not (math.isfinite(v) and v >= 0) for v in values):
        raise ValueError(f"axis RMS values must be finite and >= 0, got {values}")
    return math.hypot(*values)


def analyze(s: Signal, config: AnalysisConfig | None = None) -> ShockAnalysis:
    """Run every configured estimator on one signal.

    Estimator failures do not abort the analysis; they are collected per
    method. For a constant non-zero signal the kurtosis is reported as an
    error, WMS gives VSI = 1, and the cumulative VSI equals the largest
    M/(N-M) with M/N < threshold_ratio.
    """
    config = config or AnalysisConfig()
    p = power_signal(s)
    out = {"rms": rms(s)}
    errors = {}
    runners = {
        "kurtosis": ("kurtosis_vsi", lambda: excess_kurtosis(p)),
        "threshold_count": ("threshold_count_vsi", lambda: threshold_count_vsi(p, config.max_fraction)),
        "energy_step": ("energy_step", lambda: energy_step(p)),
        "cumulative": ("cumulative", lambda: cumulative_energy_analysis(p, config.threshold_ratio)),
        "wms": ("wms", lambda: wms_analysis(p, config.K)),
    }
    for method in config.methods:
        key, run = runners[method]
        try:
            out[key] = run()
        except EstimatorError as exc:
            errors[method] = str(exc)
    return ShockAnalysis(errors=errors, **out)
