"""Closed-form reference values for the model signals.

These are derived analytically and share no code with the estimators, so the
test-suite can use them as independent checks.
"""
from __future__ import annotations

import math

import numpy as np


def harmonic_sample_pdf(y):
    """Density of sin(t) sampled at a uniformly random time (arcsine law)."""
    y = np.asarray(y, dtype=np.float64)
    if np.any(np.abs(y) >= 1) or np.any(~np.isfinite(y)):
        raise ValueError("harmonic sample density is defined only for |y| < 1")
    out = 1.0 / (math.pi * np.sqrt(1.0 - y * y))
    return float(out) if out.ndim == 0 else out


def harmonic_cumulative_energy(P):
    """Antiderivative of (P + 1) f(P), with f the arcsine density on [-1, 1].

    P is the shifted power coordinate: P = -1 is zero power and P = 1 is peak
    power. Definite energies follow as differences, e.g.
    W(0) - W(-1) = 1/2 - 1/π and W(1) - W(-1) = 1.
    """
    P = np.asarray(P, dtype=np.float64)
    if np.any(np.abs(P) > 1) or np.any(~np.isfinite(P)):
        raise ValueError("shifted power coordinate must lie in [-1, 1]")
    out = (np.arcsin(P) - np.sqrt(1.0 - P * P)) / math.pi
    return float(out) if out.ndim == 0 else out


def harmonic_cumulative_curve(x):
    """Normalised cumulative energy of sorted harmonic power vs sample fraction x.

    The fraction of samples whose shifted power is below P is 1/2 + arcsin(P)/π,
    so P = -cos(πx); the energy fraction is W(P) - W(-1).
    """
    x = np.asarray(x, dtype=np.float64)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("sample fraction must lie in [0, 1]")
    P = np.clip(-np.cos(math.pi * x), -1.0, 1.0)
    out = harmonic_cumulative_energy(P) - harmonic_cumulative_energy(-1.0)
    return float(out) if np.ndim(out) == 0 else out


def staircase_mse(delta_w: float) -> float:
    """Mean squared deviation of an ideal staircase from its best-fit line."""
    if not delta_w >= 0:
        raise ValueError(f"delta_w must be >= 0, got {delta_w}")
    return delta_w * delta_w / 12.0


def _cos_even_moment(n):
    # time average of cos^(2n)
    return math.exp(math.lgamma(n + 0.5) - math.lgamma(n + 1.0)) / math.sqrt(math.pi)


def harmonic_wms_vsi(K: float) -> float:
    """Weighted-mean-square index of a pure harmonic for weight exponent K."""
    if not K >= 0:
        raise ValueError(f"K must be >= 0, got {K}")
    ratio = _cos_even_moment(K + 1) / _cos_even_moment(K)
    return math.sqrt(ratio / _cos_even_moment(1))


def pulse_energy(A_p: float, t_p: float) -> float:
    """∫ a²(t) dt of one Gaussian displacement pulse's acceleration (m²/s³)."""
    return 3.0 * math.sqrt(math.pi) * A_p * A_p / (4.0 * t_p**3)


#: Excess kurtosis of the power of a pure harmonic (arcsine law).
HARMONIC_POWER_EXCESS_KURTOSIS = -1.5

#: Excess kurtosis of a squared standard normal variable (chi-square, 1 dof).
SQUARED_GAUSSIAN_EXCESS_KURTOSIS = 12.0
