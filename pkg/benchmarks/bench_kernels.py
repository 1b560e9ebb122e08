"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 1000000 10000000] [--repeat 3]

Kernel timings call each backend directly. The end-to-end row runs
``metrics.analyze`` on a pulse train in a subprocess per backend, because the
backend is fixed at import time.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from vibshock import _backend

END_TO_END = """
import time, warnings
from vibshock import metrics, models, BACKEND
warnings.simplefilter("ignore")
s = models.gen_pulse_train(models.PulseTrainParams(100.0, 0.1, 3.58e-6), 50_000.0, {dur})
t0 = time.perf_counter()
for _ in range({repeat}):
    metrics.analyze(s)
print(BACKEND, (time.perf_counter() - t0) / {repeat})
"""


def kernel_cases(k, x, ordered, q):
    return {
        "neumaier_sum": lambda: k.neumaier_sum(x),
        "compensated_cumsum": lambda: k.compensated_cumsum(x),
        "count_below_normalized": lambda: k.count_below_normalized(ordered, 0.18),
        "central_moments": lambda: k.central_moments(x),
        "weighted_power_sums": lambda: k.weighted_power_sums(q, 2.0),
        "gaussian_pulse_train": lambda: k.gaussian_pulse_train(x.size, 2e-5, 0.1, 1e-3, 2.25e-3, 8.0),
    }


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def end_to_end(backend, n, repeat):
    env = dict(os.environ, VIBSHOCK_PURE_PYTHON="1" if backend == "python" else "0")
    code = END_TO_END.format(dur=n / 50_000.0, repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    if out[0] != backend:
        raise RuntimeError(f"asked for {backend}, subprocess loaded {out[0]}")
    return float(out[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000_000, 10_000_000])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = _backend.available()
    print(f"backends: {', '.join(backends)}")
    header = f"{'kernel':<24}{'N':>10}" + "".join(f"{b + ' [ms]':>16}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n in args.sizes:
        rng = np.random.default_rng(0)
        x = rng.standard_normal(n) ** 2
        ordered = np.sort(x)
        q = x / x.max()
        timings = {b: {name: best_of(fn, args.repeat)
                       for name, fn in kernel_cases(_backend.load(b), x, ordered, q).items()}
                   for b in backends}
        timings_e2e = {b: end_to_end(b, n, args.repeat) for b in backends}
        rows = [(name, {b: timings[b][name] for b in backends}) for name in timings[backends[0]]]
        rows.append(("analyze (end to end)", timings_e2e))
        for name, by_backend in rows:
            line = f"{name:<24}{n:>10}" + "".join(f"{1e3 * by_backend[b]:>16.2f}" for b in backends)
            if len(backends) == 2:
                line += f"{by_backend['python'] / by_backend['cython']:>9.1f}x"
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
