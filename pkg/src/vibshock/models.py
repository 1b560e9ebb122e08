"""Model acceleration signals: harmonic, Gaussian pulse train and white noise.

Both deterministic models are specified by a displacement and differentiated
twice in closed form, so their acceleration has zero mean over whole periods.
Time starts at t = 0 at a cosine maximum / pulse centre.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .signal import Signal

#: Pulses are evaluated within this many pulse widths of their centre;
#: exp(-8**2/2) ~ 1e-14 relative to the peak.
PULSE_REACH = 8.0

#: Minimum samples per pulse width accepted by ``gen_pulse_train``.
MIN_SAMPLES_PER_WIDTH = 10.0

#: Default sample rate for reproduction runs (Hz).
DEFAULT_SAMPLE_RATE = 50_000.0

#: Identifier of the noise generator, recorded in report metadata.
WGN_ALGORITHM = f"numpy.random.Generator(PCG64) numpy=={np.__version__}"


@dataclass(frozen=True)
class HarmonicParams:
    A_c: float  # displacement amplitude, m
    f_c: float  # Hz
    phi_c: float = 0.0

    def __post_init__(self):
        if not self.A_c >= 0:
            raise ValueError(f"A_c must be >= 0, got {self.A_c}")
        if not self.f_c > 0:
            raise ValueError(f"f_c must be > 0, got {self.f_c}")

    @property
    def peak_acceleration(self) -> float:
        return self.A_c * (2 * math.pi * self.f_c) ** 2


@dataclass(frozen=True)
class PulseTrainParams:
    f_c: float  # spectral peak of a single pulse, Hz
    T_p: float  # pulse separation, s
    A_c_ref: float  # amplitude of the harmonic whose RMS is matched, m

    def __post_init__(self):
        for name in ("f_c", "T_p", "A_c_ref"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    @property
    def t_p(self) -> float:
        return derive_pulse_width(self.f_c)

    @property
    def A_p(self) -> float:
        return derive_pulse_amplitude(self.f_c, self.T_p, self.A_c_ref)

    @property
    def peak_acceleration(self) -> float:
        return self.A_p / self.t_p**2


def _sample_count(sample_rate, duration):
    if not duration > 0:
        raise ValueError(f"duration must be > 0, got {duration}")
    if not sample_rate > 0:
        raise ValueError(f"sample_rate must be > 0, got {sample_rate}")
    n = int(round(duration * sample_rate))
    if n < 1:
        raise ValueError("duration is shorter than one sample interval")
    return n


def gen_harmonic(p: HarmonicParams, sample_rate: float, duration: float) -> Signal:
    """Acceleration of x(t) = A_c cos(2π f_c t + φ_c)."""
    if not sample_rate > 2 * p.f_c:
        raise ValueError(
            f"sample_rate {sample_rate} Hz does not exceed the Nyquist rate "
            f"{2 * p.f_c} Hz")
    n = _sample_count(sample_rate, duration)
    w = 2 * math.pi * p.f_c
    t = np.arange(n) / sample_rate
    a = -p.A_c * w**2 * np.cos(w * t + p.phi_c)
    return Signal(a, sample_rate, label="harmonic")


def derive_pulse_width(f_c: float) -> float:
    """Gaussian width t_p that puts the acceleration spectrum peak at f_c.

    The acceleration pulse transforms as ω² exp(-ω² t_p² / 2), which peaks at
    ω = √2 / t_p.
    """
    if not f_c > 0:
        raise ValueError(f"f_c must be > 0, got {f_c}")
    return 1.0 / (math.sqrt(2.0) * math.pi * f_c)


def derive_pulse_amplitude(f_c: float, T_p: float, A_c_ref: float) -> float:
    """Displacement amplitude A_p giving the same acceleration RMS as the harmonic.

    Valid while t_p << T_p, where neighbouring pulses do not overlap.
    """
    for name, v in (("f_c", f_c), ("T_p", T_p), ("A_c_ref", A_c_ref)):
        if not v > 0:
            raise ValueError(f"{name} must be > 0, got {v}")
    return 4.0 * math.sqrt(f_c * T_p / 3.0 * math.sqrt(math.pi / 2.0)) * A_c_ref


def gen_pulse_train(p: PulseTrainParams, sample_rate: float, duration: float) -> Signal:
    n = _sample_count(sample_rate, duration)
    t_p = p.t_p
    if sample_rate * t_p < MIN_SAMPLES_PER_WIDTH:
        raise ValueError(
            f"sample_rate {sample_rate} Hz gives {sample_rate * t_p:.2f} samples per "
            f"pulse width; need >= {MIN_SAMPLES_PER_WIDTH:g}")
    if t_p / p.T_p > 0.1:
        warnings.warn(
            f"pulse width/separation = {t_p / p.T_p:.3f} > 0.1: pulses overlap and "
            "the RMS matching of A_p is only approximate", stacklevel=2)
    a = kernels.gaussian_pulse_train(n, 1.0 / sample_rate, p.T_p, p.A_p, t_p, PULSE_REACH)
    return Signal(a, sample_rate, label="pulses")


def gen_wgn(target_rms: float, sample_rate: float, duration: float, seed: int) -> Signal:
    if not target_rms >= 0:
        raise ValueError(f"target_rms must be >= 0, got {target_rms}")
    n = _sample_count(sample_rate, duration)
    rng = np.random.default_rng(seed)
    return Signal(target_rms * rng.standard_normal(n), sample_rate, label="wgn")
