"""Pure-numpy implementations of the hot mode-sum kernels.

Reference semantics for the backend pair (see `_kernels_numba` for the
jitted twin).  Scalar reductions use math.fsum, which is exactly rounded
and therefore at least as accurate as the compensated loops in the numba
lane; batch grid evaluations use numpy's deterministic pairwise sum.
"""

import math

import numpy as np

from ._series import (
    S2_COEF,
    S2_SERIES_CUTOFF,
    SI_CF_FIXED_ITERS,
    SI_COEF,
    SI_SERIES_CUTOFF,
    SINC_SERIES_CUTOFF,
)

_HALF_PI = 0.5 * np.pi

# chunk size for (modes x times) work matrices, ~32 MB of float64
_CHUNK = 4_000_000


def _sinc_arr(x):
    x = np.asarray(x)
    out = np.empty_like(x)
    small = np.abs(x) < SINC_SERIES_CUTOFF
    xs = x[small]
    out[small] = 1.0 - xs * xs / 6.0 + xs ** 4 / 120.0
    xl = x[~small]
    out[~small] = np.sin(xl) / xl
    return out


def _si_cf_pos(x):
    """Auxiliary-function route for x > cutoff: K(ix) = g - i f by a
    fixed-iteration modified Lentz recursion (vector form, no early exit)."""
    b = 1.0 + 1j * x
    c = np.full_like(b, 1e300)
    d = 1.0 / b
    h = d.copy()
    for k in range(1, SI_CF_FIXED_ITERS):
        a = -float(k * k)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        h = h * (c * d)
    g = h.real
    f = -h.imag
    return _HALF_PI - f * np.cos(x) - g * np.sin(x)


def si_many(xs):
    xs = np.asarray(xs, dtype=np.float64)
    ax = np.abs(xs)
    out = np.empty_like(ax)
    small = ax <= SI_SERIES_CUTOFF
    u = ax[small] ** 2
    p = np.zeros_like(u)
    for k in range(SI_COEF.shape[0] - 1, -1, -1):
        p = p * u + SI_COEF[k]
    out[small] = ax[small] * p
    large = ~small
    if np.any(large):
        out[large] = _si_cf_pos(ax[large])
    return np.copysign(out, xs)


def _s2_over_y2_arr(y):
    ay = np.abs(y)
    out = np.empty_like(ay)
    small = ay <= S2_SERIES_CUTOFF
    u = ay[small] ** 2
    q = np.zeros_like(u)
    for k in range(S2_COEF.shape[0] - 1, -1, -1):
        q = q * u + S2_COEF[k]
    out[small] = q
    yl = ay[~small]
    if yl.size:
        out[~small] = (yl * si_many(yl) + np.cos(yl) - 1.0) / (yl * yl)
    return out


def csum(values):
    return math.fsum(np.asarray(values, dtype=np.float64))


def _batched_mode_sum(amps, omegas, ts, term):
    """sum over modes of term(y_matrix) * amps, chunked over ts.

    Each time point reduces over a contiguous mode row, so np.sum's
    pairwise order is fixed and a given t yields bit-identical results
    whatever the batch shape."""
    n_modes = amps.shape[0]
    out = np.empty(ts.shape[0])
    step = max(1, _CHUNK // max(n_modes, 1))
    for lo in range(0, ts.shape[0], step):
        hi = min(lo + step, ts.shape[0])
        y = np.multiply.outer(ts[lo:hi], omegas)
        out[lo:hi] = np.sum(amps[None, :] * term(y), axis=1)
    return out


def psi_many(amps, omegas, ts):
    return _batched_mode_sum(amps, omegas, ts, np.cos)


def psi_bar_many(amps, omegas, ts):
    return _batched_mode_sum(amps, omegas, ts, _sinc_arr)


def response_many(amps, omegas, ts):
    return _batched_mode_sum(amps * omegas, omegas, ts, np.sin)


def _sinc_dot_arr(y):
    out = np.empty_like(y)
    small = np.abs(y) < SINC_SERIES_CUTOFF
    ys = y[small]
    out[small] = -ys / 3.0 + ys ** 3 / 30.0
    yl = y[~small]
    out[~small] = (yl * np.cos(yl) - np.sin(yl)) / (yl * yl)
    return out


def psi_bar_dot_many(amps, omegas, ts):
    return _batched_mode_sum(amps * omegas, omegas, ts, _sinc_dot_arr)


def laplace_conv(amps, omegas, s):
    return csum(amps * s / (s * s + omegas * omegas))


def laplace_ta(amps, omegas, s):
    return csum(amps * np.arctan(omegas / s) / omegas)


def ta_waiting_numerator(amps, omegas):
    return csum(amps * _HALF_PI / omegas)


def work_affine(amps, omegas, tau, kind):
    y = omegas * tau
    if kind == 0:
        h = _sinc_arr(0.5 * y)
        terms = amps * tau * tau * h * h
    else:
        terms = amps * 2.0 * tau * tau * _s2_over_y2_arr(y)
    return csum(terms)


def _h2_arr(x, w, kind):
    y = w * np.abs(x)
    if kind == 0:
        h = np.sin(0.5 * y)
        return 2.0 * h * h / (w * w)
    return _s2_over_y2_arr(y) * (x * x)


def work_segments(amps, omegas, knots, rates, kind):
    diff = knots[:, None] - knots[None, :]
    rr = np.outer(rates, rates)
    terms = np.empty(amps.shape[0])
    for n in range(amps.shape[0]):
        g = _h2_arr(diff, omegas[n], kind)
        mixed = g[1:, :-1] - g[1:, 1:] - g[:-1, :-1] + g[:-1, 1:]
        terms[n] = amps[n] * math.fsum((rr * mixed).ravel())
    return csum(terms)


def opt_ta_sum(amps, omegas, tau, tau_w):
    den = tau + 2.0 * tau_w
    alpha = tau_w / den
    a = (tau + tau_w) / den
    b = 1.0 / den
    y = omegas * tau
    terms = amps * (alpha + a * _sinc_arr(y) + b * (si_many(y) - np.sin(y)) / omegas)
    return csum(terms)
