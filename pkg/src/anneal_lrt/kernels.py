"""Relaxation kernel, its time average, response function, Laplace
transforms and waiting times, all evaluated from a ModeDecomposition.

Every operation here is a pure function of an immutable mode table; batch
evaluation over time grids is O(n_modes) per point with a deterministic
fixed-order reduction.
"""

from __future__ import annotations

import enum

import numpy as np

from .backend import kernels as _k
from .spectral import ModeDecomposition


class KernelKind(enum.Enum):
    """Which work-measurement kernel: the plain relaxation function or its
    running time average."""

    CONVENTIONAL = "conventional"
    TIME_AVERAGED = "time-averaged"


def _check_kind(kind: KernelKind) -> KernelKind:
    if not isinstance(kind, KernelKind):
        raise TypeError(f"kind must be a KernelKind, got {kind!r}")
    return kind


def _eval_grid(fn, modes: ModeDecomposition, t):
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = fn(modes.amplitudes, modes.omegas, np.ascontiguousarray(ts))
    if np.ndim(t) == 0:
        return float(out[0])
    return out

def psi(modes: ModeDecomposition, t):
    """Relaxation kernel Psi(t) = sum_n A_n cos(omega_n t); even in t.

    Accepts a scalar or an array of times.
    """
    return _eval_grid(_k.psi_many, modes, t)


def psi_bar(modes: ModeDecomposition, t):
    """Running time average (1/t) int_0^t Psi(u) du = sum_n A_n sinc(omega_n t),
    with sinc(0) = 1 so psi_bar(0) = psi(0) exactly.  Even in t.
    """
    return _eval_grid(_k.psi_bar_many, modes, t)


def response_function(modes: ModeDecomposition, t):
    """phi(t) = -d Psi/dt = sum_n A_n omega_n sin(omega_n t); odd, phi(0) = 0."""
    return _eval_grid(_k.response_many, modes, t)


def psi_bar_dot(modes: ModeDecomposition, t):
    """d psi_bar/dt; odd, -> 0 at t = 0.  Used by the quadrature evaluation
    path of the optimal time-averaged work."""
    return _eval_grid(_k.psi_bar_dot_many, modes, t)


def laplace(modes: ModeDecomposition, kind: KernelKind, s: float) -> float:
    """Laplace transform of the selected kernel at rate s > 0.

    Per-mode closed forms: sum A_n s/(s^2 + omega_n^2) for the conventional
    kernel, sum A_n arctan(omega_n/s)/omega_n for the time-averaged one.
    These are the only evaluation path for the improper kernel integrals;
    the oscillatory integrals themselves are never quadratured.
    """
    _check_kind(kind)
    s = float(s)
    if not np.isfinite(s) or s <= 0:
        raise ValueError(f"Laplace rate s must be finite and > 0, got {s}")
    if kind is KernelKind.CONVENTIONAL:
        return _k.laplace_conv(modes.amplitudes, modes.omegas, s)
    return _k.laplace_ta(modes.amplitudes, modes.omegas, s)


def waiting_time(modes: ModeDecomposition, kind: KernelKind) -> float:
    """Decorrelation (waiting) time of the selected kernel.

    Conventional: the s -> 0 limit of the Laplace transform vanishes for
    any finite cosine sum, so the waiting time is exactly 0.
    Time-averaged: [sum A_n pi/(2 omega_n)] / [sum A_n], which for the
    Ising mode table reduces algebraically to the chain's energy-sum form
    (see `spectral.ising_waiting_time`).
    """
    _check_kind(kind)
    if kind is KernelKind.CONVENTIONAL:
        return 0.0
    num = _k.ta_waiting_numerator(modes.amplitudes, modes.omegas)
    den = _k.csum(modes.amplitudes)
    return num / den
