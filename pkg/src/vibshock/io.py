"""CSV ingestion, JSON reports and plot-data export.

CSV layout: UTF-8, ``#`` comment lines, optional header row, one sample
instant per row. Comment lines of the form ``# key: value`` (or ``key=value``)
are kept as metadata; ``rate_hz`` sets the sample rate. Recognised column
layouts without a header: ``a``; ``t,a``; ``ax,ay,az``; ``t,ax,ay,az``.
"""
from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .metrics import (
    AnalysisConfig,
    CumulativeEnergyResult,
    ShockAnalysis,
    WmsResult,
    sorted_cumulative_energy,
)
from .signal import PowerSignal, Signal, SignalError, TriaxialRecord, power_signal

SCHEMA_VERSION = 1

#: Maximum relative deviation of any time step from the median step.
MAX_TIME_JITTER = 1e-4


class IngestError(Exception):
    """Base class for CSV ingestion failures; ``category`` is machine-readable."""

    category = "ingest-error"


class MissingFileError(IngestError):
    category = "file-not-found"


class MalformedRowError(IngestError):
    category = "malformed-row"

    def __init__(self, message, row):
        super().__init__(message)
        self.row = row


class NonFiniteValueError(MalformedRowError):
    category = "non-finite-value"


class MissingSampleRateError(IngestError):
    category = "missing-sample-rate"


class ColumnCountError(MalformedRowError):
    category = "inconsistent-columns"


class IrregularTimeError(IngestError):
    category = "irregular-time"


class InvalidSampleRateError(IngestError):
    category = "invalid-sample-rate"


_META_RE = re.compile(r"^#\s*([A-Za-z_][\w.-]*)\s*[:=]\s*(.*?)\s*$")


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def _layout(names, ncols):
    """Map column index -> role ('t', 'x', 'y', 'z' or 'a')."""
    if names is not None:
        lowered = [n.strip().lower() for n in names]
        time_idx = [i for i, n in enumerate(lowered) if n == "t" or n.startswith("time")]
        data = [i for i in range(ncols) if i not in time_idx[:1]]
    elif ncols in (2, 4):
        time_idx, data = [0], list(range(1, ncols))
    elif ncols in (1, 3):
        time_idx, data = [], list(range(ncols))
    else:
        raise ColumnCountError(f"cannot interpret {ncols} columns without a header", row=None)
    if len(data) == 1:
        roles = {data[0]: "a"}
    elif len(data) == 3:
        roles = dict(zip(data, "xyz"))
    else:
        raise ColumnCountError(
            f"expected 1 or 3 acceleration columns, found {len(data)}", row=None)
    return (time_idx[0] if time_idx else None), roles


def read_csv_table(path):
    """Parse a CSV file into (header names or None, float rows array, metadata dict)."""
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"no such file: {path}")
    meta = {}
    names = None
    rows = []
    width = None
    with path.open(newline="", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                m = _META_RE.match(stripped)
                if m:
                    meta[m.group(1)] = m.group(2)
                continue
            cells = next(csv.reader([stripped]))
            if names is None and not rows and not all(_is_number(c) for c in cells):
                names = [c.strip() for c in cells]
                width = len(names)
                continue
            if width is None:
                width = len(cells)
            if len(cells) != width:
                raise ColumnCountError(
                    f"row {lineno}: expected {width} columns, found {len(cells)}", row=lineno)
            try:
                values = [float(c) for c in cells]
            except ValueError:
                raise MalformedRowError(f"row {lineno}: not a number in {stripped!r}",
                                        row=lineno) from None
            if not all(math.isfinite(v) for v in values):
                raise NonFiniteValueError(f"row {lineno}: non-finite value in {stripped!r}",
                                          row=lineno)
            rows.append(values)
    if not rows:
        raise MalformedRowError(f"{path}: no data rows", row=None)
    return names, np.asarray(rows, dtype=np.float64), meta


def _rate_from_times(t):
    if t.size < 2:
        raise MissingSampleRateError("need at least two time stamps to infer the sample rate")
    steps = np.diff(t)
    dt = float(np.median(steps))
    if not dt > 0:
        raise IrregularTimeError("time column is not strictly increasing")
    jitter = float(np.max(np.abs(steps - dt))) / dt
    if jitter > MAX_TIME_JITTER:
        raise IrregularTimeError(
            f"time step varies by {jitter:.3g} relative (limit {MAX_TIME_JITTER:g})")
    return 1.0 / dt


def read_csv(path, rate: float | None = None, channel: str | None = None,
             with_metadata: bool = False):
    """Load a CSV as a Signal (one acceleration column) or TriaxialRecord.

    The sample rate comes from ``rate`` if given, then the ``rate_hz`` comment,
    then the median step of a time column. ``channel`` picks one axis
    (``x``, ``y`` or ``z``) out of a triaxial file. With ``with_metadata`` the
    parsed comment metadata is returned too, as ``(record, metadata)``.
    """
    names, table, meta = read_csv_table(path)
    time_col, roles = _layout(names, table.shape[1])
    if rate is None and "rate_hz" in meta:
        try:
            rate = float(meta["rate_hz"])
        except ValueError:
            raise InvalidSampleRateError(f"bad rate_hz value {meta['rate_hz']!r}") from None
    if rate is None:
        if time_col is None:
            raise MissingSampleRateError(
                "no time column, no rate_hz header and no rate given")
        rate = _rate_from_times(table[:, time_col])
    label = Path(path).stem
    try:
        signals = {role: Signal(table[:, col], rate, label=f"{label}:{role}")
                   for col, role in roles.items()}
    except SignalError as exc:
        raise InvalidSampleRateError(str(exc)) from None
    if channel is not None:
        if channel not in signals:
            raise ValueError(f"channel {channel!r} not in file (has {sorted(signals)})")
        out = signals[channel]
    elif "a" in signals:
        out = signals["a"]
    else:
        out = TriaxialRecord(signals["x"], signals["y"], signals["z"])
    return (out, meta) if with_metadata else out


def write_csv(path, signal, metadata: dict | None = None):
    """Write a Signal or TriaxialRecord with a time column and ``rate_hz`` comment."""
    if isinstance(signal, TriaxialRecord):
        columns = [s.samples for s in signal]
        header = "time_s,ax_ms2,ay_ms2,az_ms2"
    else:
        columns = [signal.samples]
        header = "time_s,ax_ms2"
    rate = signal.sample_rate
    t = np.arange(len(signal)) / rate
    lines = [f"rate_hz: {rate!r}"]
    for key, value in (metadata or {}).items():
        lines.append(f"{key}: {value}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in lines:
            fh.write(f"# {line}\n")
        fh.write(header + "\n")
        np.savetxt(fh, np.column_stack([t, *columns]), fmt="%.17g", delimiter=",")


@dataclass(frozen=True, eq=False)
class CurveExport:
    x: np.ndarray
    y: np.ndarray
    x_label: str
    y_label: str

    def rows(self):
        return zip(self.x.tolist(), self.y.tolist())


def export_cumulative_curve(s, points: int = 1000) -> CurveExport:
    """Normalised cumulative energy of the sorted power vs normalised sample index.

    Keeps every ceil(N/points)-th point plus the last one, so the curve ends at
    (1, 1) exactly and stays monotone.
    """
    if points < 2:
        raise ValueError("points must be >= 2")
    _, w_hat = sorted_cumulative_energy(s)
    n = w_hat.size
    step = -(-n // points)
    idx = np.arange(step - 1, n, step)
    if idx.size == 0 or idx[-1] != n - 1:
        idx = np.append(idx, n - 1)
    return CurveExport((idx + 1) / n, w_hat[idx], "sample_fraction", "energy_fraction")


def export_power_histogram(p, bins: int = 50) -> CurveExport:
    """Equal-width histogram of the power samples over [0, max P].

    x holds bin centres, y the counts; counts sum to N.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    if not isinstance(p, PowerSignal):
        p = power_signal(p)
    top = float(np.max(p.samples))
    # np.histogram needs a non-empty range
    counts, edges = np.histogram(p.samples, bins=bins, range=(0.0, top if top > 0 else 1.0))
    centres = 0.5 * (edges[:-1] + edges[1:])
    return CurveExport(centres, counts.astype(np.int64), "power_m2s4", "count")


# ---- reports ---------------------------------------------------------------


@dataclass
class Report:
    source: str
    sample_rate_hz: float
    n_samples: int
    config: AnalysisConfig
    results: dict
    ahv: float | None = None
    metadata: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self):
        results = {}
        for name, res in self.results.items():
            d = asdict(res)
            results[name] = d
        cfg = self.config
        out = {
            "schema_version": self.schema_version,
            "source": self.source,
            "sample_rate_hz": self.sample_rate_hz,
            "n_samples": self.n_samples,
            "config": {
                "threshold_ratio": cfg.threshold_ratio,
                "K": cfg.K,
                "max_fraction": cfg.max_fraction,
                "methods": list(cfg.methods),
            },
            "results": results,
            "metadata": dict(self.metadata),
            "warnings": list(self.warnings),
        }
        if self.ahv is not None:
            out["ahv"] = self.ahv
        return out

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        c = d["config"]
        config = AnalysisConfig(threshold_ratio=c["threshold_ratio"], K=c["K"],
                                max_fraction=c["max_fraction"], methods=tuple(c["methods"]))
        results = {}
        for name, r in d["results"].items():
            r = dict(r)
            if r.get("cumulative") is not None:
                r["cumulative"] = CumulativeEnergyResult(**r["cumulative"])
            if r.get("wms") is not None:
                r["wms"] = WmsResult(**r["wms"])
            results[name] = ShockAnalysis(**r)
        return cls(source=d["source"], sample_rate_hz=d["sample_rate_hz"],
                   n_samples=d["n_samples"], config=config, results=results,
                   ahv=d.get("ahv"), metadata=dict(d.get("metadata", {})),
                   warnings=list(d.get("warnings", [])))

    def dumps(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))
