"""Shock index and shock level estimators for accelerometer signals."""
from ._backend import BACKEND
from .metrics import (
    AnalysisConfig,
    CumulativeEnergyResult,
    EstimatorError,
    ShockAnalysis,
    WmsResult,
    ahv,
    analyze,
    cumulative_energy_analysis,
    default_threshold_ratio,
    energy_step,
    excess_kurtosis,
    threshold_count_vsi,
    wms_analysis,
)
from .models import (
    HarmonicParams,
    PulseTrainParams,
    derive_pulse_amplitude,
    derive_pulse_width,
    gen_harmonic,
    gen_pulse_train,
    gen_wgn,
)
from .signal import PowerSignal, Signal, SignalError, TriaxialRecord, power_signal, rms, total_energy

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AnalysisConfig",
    "CumulativeEnergyResult",
    "EstimatorError",
    "HarmonicParams",
    "PowerSignal",
    "PulseTrainParams",
    "ShockAnalysis",
    "Signal",
    "SignalError",
    "TriaxialRecord",
    "WmsResult",
    "ahv",
    "analyze",
    "cumulative_energy_analysis",
    "default_threshold_ratio",
    "derive_pulse_amplitude",
    "derive_pulse_width",
    "energy_step",
    "excess_kurtosis",
    "gen_harmonic",
    "gen_pulse_train",
    "gen_wgn",
    "power_signal",
    "rms",
    "threshold_count_vsi",
    "total_energy",
    "wms_analysis",
]
