"""Numpy implementations of the compiled kernels in ``_kernels.pyx``.

Sums use numpy's pairwise reduction instead of a sequential Neumaier loop, so
results agree with the compiled backend to rounding, not bit for bit.
"""
import math

import numpy as np

NAME = "python"

# block length for the two-level prefix sum
_BLOCK = 1024


def neumaier_sum(x):
    return float(np.sum(x))


def compensated_cumsum(x):
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if n == 0:
        return np.empty(0)
    nblocks = -(-n // _BLOCK)
    padded = np.zeros(nblocks * _BLOCK)
    padded[:n] = x
    blocks = padded.reshape(nblocks, _BLOCK)
    inner = np.cumsum(blocks, axis=1)
    # compensated running offsets between blocks
    offsets = np.empty(nblocks)
    s = c = 0.0
    for i, total in enumerate(np.sum(blocks, axis=1).tolist()):
        offsets[i] = s + c
        t = s + total
        if abs(s) >= abs(total):
            c += (s - t) + total
        else:
            c += (total - t) + s
        s = t
    return (inner + offsets[:, None]).ravel()[:n]


def count_below_normalized(x, ratio):
    prefix = compensated_cumsum(x)
    total = float(prefix[-1])
    m = int(np.searchsorted(prefix / total, ratio, side="left"))
    return m, total


def central_moments(x):
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    mean = float(np.sum(x)) / n
    d2 = (x - mean) ** 2
    return mean, float(np.sum(d2)) / n, float(np.sum(d2 * d2)) / n


def weighted_power_sums(q, k):
    q = np.asarray(q, dtype=np.float64)
    w = np.ones_like(q) if k == 0 else np.power(q, k)
    return float(np.sum(w * q)), float(np.sum(w))


def gaussian_pulse_train(n, dt, period, amp, width, reach):
    out = np.zeros(n)
    half = reach * width
    scale = amp / width**4
    k0 = math.floor(-half / period)
    k1 = math.ceil((n * dt + half) / period)
    for k in range(k0, k1 + 1):
        centre = k * period
        i0 = max(math.ceil((centre - half) / dt), 0)
        i1 = min(math.floor((centre + half) / dt), n - 1)
        if i1 < i0:
            continue
        u = np.arange(i0, i1 + 1) * dt - centre
        out[i0:i1 + 1] += scale * (u + width) * (u - width) * np.exp(-u * u / (2.0 * width * width))
    return out
