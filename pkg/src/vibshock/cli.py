"""Command-line interface: ``vibshock {generate,analyze,compare,export-curves}``.

Failures print one JSON line ``{"error": <category>, "message": ...}`` to
stderr and exit with the category's code from ``EXIT_CODES``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, io, metrics, models
from ._backend import BACKEND
from .signal import SignalError, TriaxialRecord

EXIT_CODES = {
    "usage": 2,
    "invalid-argument": 3,
    "file-not-found": 4,
    "ingest-error": 5,
    "malformed-row": 5,
    "non-finite-value": 5,
    "inconsistent-columns": 5,
    "missing-sample-rate": 6,
    "invalid-sample-rate": 6,
    "irregular-time": 7,
    "io-error": 8,
}

DEFAULT_MIN_SAMPLES = 100_000


class CliError(Exception):
    def __init__(self, category, message):
        super().__init__(message)
        self.category = category


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", f"{self.prog}: {message}")


def _positive(text):
    v = float(text)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return v


def _nonnegative(text):
    v = float(text)
    if not (math.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError(f"must be a non-negative number, got {text}")
    return v


def build_parser():
    p = _Parser(prog="vibshock", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a model signal to CSV")
    g.add_argument("model", choices=["harmonic", "pulses", "wgn"])
    g.add_argument("--fc", type=_positive, default=100.0, help="frequency / pulse spectral peak, Hz")
    g.add_argument("--amp", type=_nonnegative, default=3.58e-6,
                   help="harmonic displacement amplitude A_c (also the RMS reference for pulses), m")
    g.add_argument("--phase", type=float, default=0.0, help="harmonic phase, rad")
    g.add_argument("--tp", type=_positive, default=0.1, help="pulse separation T_p, s")
    g.add_argument("--rms", type=_nonnegative, default=1.0, help="WGN target RMS, m/s^2")
    g.add_argument("--seed", type=int, default=None, help="WGN seed (required for wgn)")
    g.add_argument("--rate", type=_positive, default=models.DEFAULT_SAMPLE_RATE, help="Hz")
    g.add_argument("--dur", type=_positive, default=10.0, help="duration, s")
    g.add_argument("-o", "--output", required=True, help="CSV path")

    def add_config_flags(q):
        q.add_argument("--rate", type=_positive, default=None,
                       help="sample rate, Hz (overrides the file's rate_hz)")
        q.add_argument("--channel", choices=["x", "y", "z"], default=None)
        q.add_argument("--threshold-ratio", type=float, default=metrics.default_threshold_ratio())
        q.add_argument("--K", type=float, default=2.0, dest="K", help="WMS weight exponent")
        q.add_argument("--max-fraction", type=float, default=0.5)
        q.add_argument("--methods", nargs="+", choices=metrics.METHODS, default=list(metrics.METHODS))
        q.add_argument("--min-samples", type=int, default=DEFAULT_MIN_SAMPLES,
                       help="warn when a record is shorter than this")

    a = sub.add_parser("analyze", help="analyse a CSV and write a JSON report")
    a.add_argument("input")
    add_config_flags(a)
    a.add_argument("-o", "--output", default=None, help="report path (default: stdout)")

    c = sub.add_parser("compare", help="tabulate VSI/VSL for several inputs")
    c.add_argument("inputs", nargs="+")
    add_config_flags(c)
    c.add_argument("--json", action="store_true", help="emit reports as a JSON list")
    c.add_argument("--jobs", type=int, default=1)

    e = sub.add_parser("export-curves", help="write cumulative-energy and histogram CSVs")
    e.add_argument("input")
    e.add_argument("--rate", type=_positive, default=None)
    e.add_argument("--channel", choices=["x", "y", "z"], default=None)
    e.add_argument("--points", type=int, default=1000)
    e.add_argument("--bins", type=int, default=50)
    e.add_argument("--out-prefix", required=True)
    return p


def _config(args):
    try:
        return metrics.AnalysisConfig(threshold_ratio=args.threshold_ratio, K=args.K,
                                      max_fraction=args.max_fraction, methods=tuple(args.methods))
    except ValueError as exc:
        raise CliError("invalid-argument", str(exc)) from None


def _load(path, rate, channel):
    try:
        return io.read_csv(path, rate=rate, channel=channel, with_metadata=True)
    except io.IngestError as exc:
        raise CliError(exc.category, str(exc)) from None
    except ValueError as exc:
        raise CliError("invalid-argument", str(exc)) from None


def build_report(path, config, rate=None, channel=None, min_samples=DEFAULT_MIN_SAMPLES):
    record, meta = _load(path, rate, channel)
    if isinstance(record, TriaxialRecord):
        channels = dict(record.items())
    else:
        channels = {channel or "a": record}
    results = {name: metrics.analyze(s, config) for name, s in channels.items()}
    total = None
    if isinstance(record, TriaxialRecord):
        total = metrics.ahv(*(results[k].rms for k in ("x", "y", "z")))
    notes = []
    if len(record) < min_samples:
        notes.append(f"only {len(record)} samples (< {min_samples}); estimates may not have converged")
    metadata = {"tool_version": __version__, "kernel_backend": BACKEND, "filtering": "none"}
    metadata.update({f"input.{k}": v for k, v in meta.items()})
    return io.Report(source=str(path), sample_rate_hz=record.sample_rate, n_samples=len(record),
                     config=config, results=results, ahv=total, metadata=metadata, warnings=notes)


def cmd_generate(args):
    meta = {"generator": args.model, "tool_version": __version__}
    try:
        if args.model == "harmonic":
            hp = models.HarmonicParams(args.amp, args.fc, args.phase)
            sig = models.gen_harmonic(hp, args.rate, args.dur)
            meta.update(fc_hz=args.fc, amp_m=args.amp, phase_rad=args.phase)
        elif args.model == "pulses":
            pp = models.PulseTrainParams(args.fc, args.tp, args.amp)
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                sig = models.gen_pulse_train(pp, args.rate, args.dur)
            for w in caught:
                print(f"warning: {w.message}", file=sys.stderr)
            meta.update(fc_hz=args.fc, tp_s=args.tp, amp_ref_m=args.amp,
                        pulse_width_s=pp.t_p, pulse_amp_m=pp.A_p)
        else:
            if args.seed is None:
                raise CliError("invalid-argument", "wgn requires --seed")
            sig = models.gen_wgn(args.rms, args.rate, args.dur, args.seed)
            meta.update(rms=args.rms, seed=args.seed, rng=models.WGN_ALGORITHM)
    except (ValueError, SignalError) as exc:
        raise CliError("invalid-argument", str(exc)) from None
    try:
        io.write_csv(args.output, sig, meta)
    except OSError as exc:
        raise CliError("io-error", str(exc)) from None
    return 0


def _warn(report):
    for note in report.warnings:
        print(f"warning: {report.source}: {note}", file=sys.stderr)


def cmd_analyze(args):
    report = build_report(args.input, _config(args), args.rate, args.channel, args.min_samples)
    _warn(report)
    text = report.dumps()
    if args.output:
        try:
            Path(args.output).write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            raise CliError("io-error", str(exc)) from None
    else:
        print(text)
    return 0


def _fmt(v):
    return "-" if v is None else f"{v:.4g}"


def cmd_compare(args):
    config = _config(args)

    def run(path):
        return build_report(path, config, args.rate, args.channel, args.min_samples)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        reports = list(pool.map(run, args.inputs))
    for r in reports:
        _warn(r)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
        return 0
    header = ("input", "channel", "rms", "kurtosis", "thr_count", "cum_vsi", "cum_vsl",
              "wms_vsi", "wms_vsl", "energy_step")
    rows = [header]
    for r in reports:
        for name, res in r.results.items():
            cum, wms = res.cumulative, res.wms
            rows.append((r.source, name, _fmt(res.rms), _fmt(res.kurtosis_vsi),
                         _fmt(res.threshold_count_vsi),
                         _fmt(cum and cum.vsi), _fmt(cum and cum.vsl),
                         _fmt(wms and wms.vsi), _fmt(wms and wms.vsl), _fmt(res.energy_step)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def cmd_export(args):
    if args.points < 2 or args.bins < 1:
        raise CliError("invalid-argument", "need --points >= 2 and --bins >= 1")
    record, _ = _load(args.input, args.rate, args.channel)
    channels = dict(record.items()) if isinstance(record, TriaxialRecord) else {"a": record}
    for name, sig in channels.items():
        try:
            curve = io.export_cumulative_curve(sig, args.points)
        except metrics.EstimatorError as exc:
            raise CliError("invalid-argument", f"channel {name}: {exc}") from None
        hist = io.export_power_histogram(sig, args.bins)
        suffix = "" if name == "a" else f"_{name}"
        try:
            _write_curve(f"{args.out_prefix}{suffix}_cumulative.csv", curve)
            _write_curve(f"{args.out_prefix}{suffix}_histogram.csv", hist)
        except OSError as exc:
            raise CliError("io-error", str(exc)) from None
    return 0


def _write_curve(path, curve):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{curve.x_label},{curve.y_label}\n")
        for x, y in curve.rows():
            fh.write(f"{x!r},{y!r}\n")


COMMANDS = {"generate": cmd_generate, "analyze": cmd_analyze, "compare": cmd_compare,
            "export-curves": cmd_export}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(json.dumps({"error": exc.category, "message": str(exc)}), file=sys.stderr)
        return EXIT_CODES[exc.category]


if __name__ == "__main__":
    sys.exit(main())
