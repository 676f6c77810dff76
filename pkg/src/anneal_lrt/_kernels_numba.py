"""numba @njit implementations of the hot mode-sum kernels.

Same function surface as `_kernels_numpy`; see that module for the
reference semantics.  All reductions over modes run serially in ascending
index order with Neumaier compensation, so results are deterministic and
the summation error is bounded independently of the number of modes.
"""

import numpy as np
from numba import njit

from ._series import (
    S2_COEF,
    S2_SERIES_CUTOFF,
    SI_CF_EPS,
    SI_CF_MAXIT,
    SI_COEF,
    SI_SERIES_CUTOFF,
    SINC_SERIES_CUTOFF,
)

_HALF_PI = 0.5 * np.pi


@njit(cache=True)
def _sinc(x):
    ax = abs(x)
    if ax < SINC_SERIES_CUTOFF:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return np.sin(x) / x


@njit(cache=True)
def _si_pos(x):
    """Si(x) for x >= 0: power series below the cutoff, Lentz continued
    fraction for the auxiliary function K(ix) = g - i f above it."""
    if x <= SI_SERIES_CUTOFF:
        u = x * x
        p = 0.0
        for k in range(SI_COEF.shape[0] - 1, -1, -1):
            p = p * u + SI_COEF[k]
        return x * p
    b = complex(1.0, x)
    c = complex(1e300, 0.0)
    d = 1.0 / b
    h = d
    for k in range(1, SI_CF_MAXIT):
        a = -float(k * k)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        dl = c * d
        h = h * dl
        if abs(dl.real - 1.0) + abs(dl.imag) < SI_CF_EPS:
            break
    g = h.real
    f = -h.imag
    return _HALF_PI - f * np.cos(x) - g * np.sin(x)


@njit(cache=True)
def _si(x):
    if x >= 0.0:
        return _si_pos(x)
    return -_si_pos(-x)


@njit(cache=True)
def si_many(xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = _si(xs[i])
    return out


@njit(cache=True)
def _s2_over_y2(y):
    """S2(y)/y^2 with S2(y) = y Si(y) + cos y - 1; even, -> 1/2 at y = 0."""
    ay = abs(y)
    if ay <= S2_SERIES_CUTOFF:
        u = y * y
        q = 0.0
        for k in range(S2_COEF.shape[0] - 1, -1, -1):
            q = q * u + S2_COEF[k]
        return q
    return (ay * _si_pos(ay) + np.cos(ay) - 1.0) / (y * y)


@njit(cache=True)
def csum(values):
    """Neumaier-compensated serial sum."""
    s = 0.0
    c = 0.0
    for i in range(values.shape[0]):
        x = values[i]
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


@njit(cache=True)
def psi_many(amps, omegas, ts):
    out = np.empty(ts.shape[0])
    for j in range(ts.shape[0]):
        t = ts[j]
        s = 0.0
        c = 0.0
        for i in range(amps.shape[0]):
            x = amps[i] * np.cos(omegas[i] * t)
            tot = s + x
            if abs(s) >= abs(x):
                c += (s - tot) + x
            else:
                c += (x - tot) + s
            s = tot
        out[j] = s + c
    return out


@njit(cache=True)
def psi_bar_many(amps, omegas, ts):
    out = np.empty(ts.shape[0])
    for j in range(ts.shape[0]):
        t = ts[j]
        s = 0.0
        c = 0.0
        for i in range(amps.shape[0]):
            x = amps[i] * _sinc(omegas[i] * t)
            tot = s + x
            if abs(s) >= abs(x):
                c += (s - tot) + x
            else:
                c += (x - tot) + s
            s = tot
        out[j] = s + c
    return out


@njit(cache=True)
def response_many(amps, omegas, ts):
    out = np.empty(ts.shape[0])
    for j in range(ts.shape[0]):
        t = ts[j]
        s = 0.0
        c = 0.0
        for i in range(amps.shape[0]):
            x = amps[i] * omegas[i] * np.sin(omegas[i] * t)
            tot = s + x
            if abs(s) >= abs(x):
                c += (s - tot) + x
            else:
                c += (x - tot) + s
            s = tot
        out[j] = s + c
    return out


@njit(cache=True)
def _sinc_dot(y):
    """d/dy [sinc(y)] = (y cos y - sin y)/y^2; odd, -> 0 at y = 0."""
    if abs(y) < SINC_SERIES_CUTOFF:
        return -y / 3.0 + y * y * y / 30.0
    return (y * np.cos(y) - np.sin(y)) / (y * y)


@njit(cache=True)
def psi_bar_dot_many(amps, omegas, ts):
    out = np.empty(ts.shape[0])
    for j in range(ts.shape[0]):
        t = ts[j]
        s = 0.0
        c = 0.0
        for i in range(amps.shape[0]):
            x = amps[i] * omegas[i] * _sinc_dot(omegas[i] * t)
            tot = s + x
            if abs(s) >= abs(x):
                c += (s - tot) + x
            else:
                c += (x - tot) + s
            s = tot
        out[j] = s + c
    return out


@njit(cache=True)
def laplace_conv(amps, omegas, s):
    terms = np.empty(amps.shape[0])
    for i in range(amps.shape[0]):
        w = omegas[i]
        terms[i] = amps[i] * s / (s * s + w * w)
    return csum(terms)


@njit(cache=True)
def laplace_ta(amps, omegas, s):
    terms = np.empty(amps.shape[0])
    for i in range(amps.shape[0]):
        w = omegas[i]
        terms[i] = amps[i] * np.arctan(w / s) / w
    return csum(terms)


@njit(cache=True)
def ta_waiting_numerator(amps, omegas):
    terms = np.empty(amps.shape[0])
    for i in range(amps.shape[0]):
        terms[i] = amps[i] * _HALF_PI / omegas[i]
    return csum(terms)


@njit(cache=True)
def work_affine(amps, omegas, tau, kind):
    """sum_n A_n * I_n for unit-slope affine schedules, where
    I_n = double integral of the kernel over [0,tau]^2.
    kind 0: cosine kernel, I = tau^2 sinc^2(w tau / 2).
    kind 1: sinc kernel,   I = 2 tau^2 S2(w tau)/(w tau)^2.
    """
    terms = np.empty(amps.shape[0])
    for i in range(amps.shape[0]):
        y = omegas[i] * tau
        if kind == 0:
            h = _sinc(0.5 * y)
            terms[i] = amps[i] * tau * tau * h * h
        else:
            terms[i] = amps[i] * 2.0 * tau * tau * _s2_over_y2(y)
    return csum(terms)


@njit(cache=True)
def _h2(x, w, kind):
    """Second antiderivative of the kernel: H2'' = cos(w x) or sinc(w x);
    even in x, H2(0) = 0."""
    y = w * abs(x)
    if kind == 0:
        h = np.sin(0.5 * y)
        return 2.0 * h * h / (w * w)
    return _s2_over_y2(y) * (x * x)


@njit(cache=True)
def work_segments(amps, omegas, knots, rates, kind):
    """sum_n A_n * I_n for piecewise-constant slopes `rates` between `knots`,
    via the exact mixed second difference of H2 on the knot grid."""
    m = rates.shape[0]
    terms = np.empty(amps.shape[0])
    g = np.empty((m + 1, m + 1))
    for n in range(amps.shape[0]):
        w = omegas[n]
        for p in range(m + 1):
            for q in range(m + 1):
                g[p, q] = _h2(knots[p] - knots[q], w, kind)
        s = 0.0
        c = 0.0
        for i in range(m):
            for j in range(m):
                val = rates[i] * rates[j] * (
                    g[i + 1, j] - g[i + 1, j + 1] - g[i, j] + g[i, j + 1]
                )
                tot = s + val
                if abs(s) >= abs(val):
                    c += (s - tot) + val
                else:
                    c += (val - tot) + s
                s = tot
        terms[n] = amps[n] * (s + c)
    return csum(terms)


@njit(cache=True)
def opt_ta_sum(amps, omegas, tau, tau_w):
    """sum_n A_n [alpha + a sinc(y) + b (Si(y) - sin y)/w] with y = w tau,
    alpha = tau_w/(tau + 2 tau_w), a = (tau + tau_w)/(tau + 2 tau_w),
    b = 1/(tau + 2 tau_w).  Every term is nonnegative, so no cancellation.
    """
    den = tau + 2.0 * tau_w
    alpha = tau_w / den
    a = (tau + tau_w) / den
    b = 1.0 / den
    terms = np.empty(amps.shape[0])
    for i in range(amps.shape[0]):
        w = omegas[i]
        y = w * tau
        terms[i] = amps[i] * (alpha + a * _sinc(y) + b * (_si(y) - np.sin(y)) / w)
    return csum(terms)
