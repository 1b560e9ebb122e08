# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. Mirrors ``_kernels_py`` function for function."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs, pow, ceil, floor

cnp.import_array()

NAME = "cython"


cdef inline void _neumaier_add(double x, double *s, double *c) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def neumaier_sum(const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            _neumaier_add(x[i], &s, &c)
    return s + c


def compensated_cumsum(const double[::1] x):
    """Running Neumaier sum; element i holds the compensated sum of x[:i+1]."""
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            _neumaier_add(x[i], &s, &c)
            o[i] = s + c
    return out


def count_below_normalized(const double[::1] x, double ratio):
    """Number of prefixes whose normalized running sum is strictly below ``ratio``.

    Runs the same accumulation as ``compensated_cumsum`` twice: once for the
    final sum, once to count, so the result matches the array-based path
    bit for bit without materialising the prefix array.
    """
    cdef Py_ssize_t i, n = x.shape[0], m = 0
    cdef double s = 0.0, c = 0.0, total
    with nogil:
        for i in range(n):
            _neumaier_add(x[i], &s, &c)
        total = s + c
        s = 0.0
        c = 0.0
        for i in range(n):
            _neumaier_add(x[i], &s, &c)
            if (s + c) / total < ratio:
                m += 1
            else:
                break
    return m, total


def central_moments(const double[::1] x):
    """(mean, m2, m4) with population normalisation, two compensated passes."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0, c = 0.0, mean, d, d2
    cdef double s2 = 0.0, c2 = 0.0, s4 = 0.0, c4 = 0.0
    with nogil:
        for i in range(n):
            _neumaier_add(x[i], &s, &c)
        mean = (s + c) / n
        for i in range(n):
            d = x[i] - mean
            d2 = d * d
            _neumaier_add(d2, &s2, &c2)
            _neumaier_add(d2 * d2, &s4, &c4)
    return mean, (s2 + c2) / n, (s4 + c4) / n


cdef inline double _ipow(double x, long m) noexcept nogil:
    cdef double r = 1.0
    while m:
        if m & 1:
            r *= x
        x *= x
        m >>= 1
    return r


def weighted_power_sums(const double[::1] q, double k):
    """(sum q**(k+1), sum q**k) in one compensated pass; 0**0 == 1."""
    cdef Py_ssize_t i, n = q.shape[0]
    cdef double sn = 0.0, cn = 0.0, sd = 0.0, cd = 0.0, w
    # integer exponents (the common K = 2 included) avoid libm pow
    cdef bint integral = k == floor(k) and k <= 64.0
    cdef long m = <long>k if integral else 0
    with nogil:
        for i in range(n):
            if integral:
                w = _ipow(q[i], m)
            else:
                w = pow(q[i], k)
            _neumaier_add(w * q[i], &sn, &cn)
            _neumaier_add(w, &sd, &cd)
    return sn + cn, sd + cd


def gaussian_pulse_train(Py_ssize_t n, double dt, double period,
                         double amp, double width, double reach):
    """Second derivative of a Gaussian pulse train sampled at t = i*dt.

    Pulses sit at k*period; each one is evaluated only within ``reach``
    pulse widths of its centre.
    """
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double half = reach * width
    cdef double duration = n * dt
    cdef double w2 = width * width
    cdef double scale = amp / (w2 * w2)
    cdef double centre, u
    cdef Py_ssize_t k, k0, k1, i, i0, i1
    with nogil:
        k0 = <Py_ssize_t>floor(-half / period)
        k1 = <Py_ssize_t>ceil((duration + half) / period)
        for k in range(k0, k1 + 1):
            centre = k * period
            i0 = <Py_ssize_t>ceil((centre - half) / dt)
            i1 = <Py_ssize_t>floor((centre + half) / dt)
            if i0 < 0:
                i0 = 0
            if i1 > n - 1:
                i1 = n - 1
            for i in range(i0, i1 + 1):
                u = i * dt - centre
                o[i] += scale * (u + width) * (u - width) * exp(-u * u / (2.0 * w2))
    return out
