"""Sampled acceleration signals and the statistics every estimator builds on.

Acceleration is assumed to be in m/s²; units are metadata only and are never
converted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels


class SignalError(ValueError):
    """Raised for samples or sample rates that violate the signal invariants."""


def _frozen_samples(samples, what):
    arr = np.array(samples, dtype=np.float64, copy=True).reshape(-1)
    if arr.size == 0:
        raise SignalError(f"{what} is empty")
    bad = ~np.isfinite(arr)
    if bad.any():
        first = int(np.argmax(bad))
        raise SignalError(f"{what} has a non-finite value at index {first}: {arr[first]!r}")
    arr.setflags(write=False)
    return arr


def _check_rate(sample_rate):
    rate = float(sample_rate)
    if not math.isfinite(rate) or rate <= 0:
        raise SignalError(f"sample_rate must be finite and > 0, got {sample_rate!r}")
    return rate


@dataclass(frozen=True, eq=False)
class Signal:
    """Uniformly sampled acceleration record.

    ``samples`` is stored as a read-only float64 copy, so a Signal can be
    shared between threads freely.
    """

    samples: np.ndarray
    sample_rate: float
    label: str | None = None
    units: str = "m/s^2"

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_samples(self.samples, "signal"))
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def duration(self) -> float:
        return self.samples.size * self.dt

    def __len__(self):
        return self.samples.size

    def scaled(self, factor: float) -> Signal:
        return Signal(self.samples * factor, self.sample_rate, self.label, self.units)

    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) * self.dt


@dataclass(frozen=True, eq=False)
class PowerSignal:
    """Elementwise square of a Signal (m²/s⁴)."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        arr = _frozen_samples(self.samples, "power signal")
        if (arr < 0).any():
            raise SignalError("power signal samples must be >= 0")
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True, eq=False)
class TriaxialRecord:
    x: Signal
    y: Signal
    z: Signal
    channels: tuple = field(default=("x", "y", "z"), init=False)

    def __post_init__(self):
        n = len(self.x)
        rate = self.x.sample_rate
        for name in ("y", "z"):
            s = getattr(self, name)
            if len(s) != n or s.sample_rate != rate:
                raise SignalError(
                    f"axis {name} has {len(s)} samples at {s.sample_rate} Hz, "
                    f"expected {n} samples at {rate} Hz")

    @property
    def sample_rate(self) -> float:
        return self.x.sample_rate

    def __len__(self):
        return len(self.x)

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def items(self):
        return zip(self.channels, (self.x, self.y, self.z))


def power_signal(s: Signal) -> PowerSignal:
    return PowerSignal(np.square(s.samples), s.sample_rate)


def rms(s: Signal) -> float:
    """Root mean square of the samples, with compensated summation."""
    p = np.square(s.samples)
    return math.sqrt(kernels.neumaier_sum(p) / p.size)


def total_energy(p: PowerSignal) -> float:
    """Δt-weighted sum of the power samples (m²/s³)."""
    return p.dt * kernels.neumaier_sum(p.samples)
