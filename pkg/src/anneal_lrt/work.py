"""Excess-work functionals at second order in the drive amplitude.

The excess work is (dl^2/2) times the double integral of the kernel
K(t - t') against dg/dt at both arguments.  For affine schedules each
mode has a closed form (cosine kernel: tau^2 sinc^2(omega tau/2); sinc
kernel: second antiderivative of sinc, built on the sine integral Si);
sampled custom schedules use exact per-segment closed forms.  Oscillatory
kernels at omega*tau ~ 1e4 destroy naive quadrature, so closed forms are
the production path and quadrature exists only as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import kernels as _k
from .kernels import KernelKind, _check_kind, psi_bar_dot, waiting_time
from .protocols import Protocol
from .spectral import ModeDecomposition

_KIND_FLAG = {KernelKind.CONVENTIONAL: 0, KernelKind.TIME_AVERAGED: 1}


def sine_integral(x):
    """Si(x) = int_0^x sin(u)/u du.

    Odd in x; absolute error <= 1e-12 for |x| <= 1e6 (power series below
    |x| = 8, auxiliary-function continued fraction above).  Accepts a
    scalar or an array; rejects non-finite input.
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("sine_integral requires finite input")
    out = _k.si_many(np.ascontiguousarray(arr.ravel()))
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def excess_work(
    modes: ModeDecomposition,
    kind: KernelKind,
    protocol: Protocol,
    delta_lambda: float,
) -> float:
    """Excess work per spin (dl^2/2) * double integral of K(t-t') dg dg'
    over [0, tau]^2, with K = Psi or its time average.

    Ramp/near-optimal schedules are evaluated through their exact affine
    closed form (the stored samples are ignored); custom schedules through
    exact per-segment closed forms, cost O(n_modes * n_segments^2).
    Near-optimal schedules contribute only their continuous part: the
    boundary jumps live in the omitted impulse terms.
    """
    flag = _KIND_FLAG[_check_kind(kind)]
    dl = float(delta_lambda)
    if not np.isfinite(dl):
        raise ValueError("delta_lambda must be finite")
    if protocol.is_affine:
        total = _k.work_affine(modes.amplitudes, modes.omegas, protocol.tau, flag)
        gdot = protocol.slope
        return 0.5 * dl * dl * gdot * gdot * total
    rates = np.diff(protocol.values) / np.diff(protocol.times)
    total = _k.work_segments(
        modes.amplitudes,
        modes.omegas,
        np.ascontiguousarray(protocol.times),
        np.ascontiguousarray(rates),
        flag,
    )
    return 0.5 * dl * dl * total


def _gauss_legendre_panels(a: float, b: float, n_panels: int, order: int = 12):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def optimal_ta_excess_work(
    modes: ModeDecomposition,
    tau: float,
    delta_lambda: float,
    waiting_time_override: float | None = None,
    method: str = "closed-form",
) -> float:
    """Near-optimal time-averaged excess work per spin,

        (dl^2/2) [ psi_bar(0) + int_0^tau d/du[psi_bar](tau - t) g*(t) dt ]

    with g* the continuous linear part of the optimal schedule at the
    kernel's waiting time.  Decays from the sudden bound dl^2 Psi(0)/2 at
    tau -> 0 and is evaluated per mode in closed form; method="quadrature"
    integrates the boundary term numerically instead (panelled
    Gauss-Legendre resolving every mode oscillation) as an independent
    cross-check of the same functional.
    """
    tau = float(tau)
    if not np.isfinite(tau) or tau <= 0:
        raise ValueError(f"tau must be finite and > 0, got {tau}")
    dl = float(delta_lambda)
    if not np.isfinite(dl):
        raise ValueError("delta_lambda must be finite")
    if waiting_time_override is None:
        tau_w = waiting_time(modes, KernelKind.TIME_AVERAGED)
    else:
        tau_w = float(waiting_time_override)
        if not np.isfinite(tau_w) or tau_w < 0:
            raise ValueError("waiting time must be finite and >= 0")

    if method == "closed-form":
        total = _k.opt_ta_sum(modes.amplitudes, modes.omegas, tau, tau_w)
        return 0.5 * dl * dl * total
    if method != "quadrature":
        raise ValueError(f"method must be 'closed-form' or 'quadrature', got {method!r}")

    omega_max = float(modes.omegas[-1])
    n_panels = max(16, int(np.ceil(omega_max * tau / np.pi)) + 2)
    nodes, wts = _gauss_legendre_panels(0.0, tau, n_panels)
    g_star = (nodes + tau_w) / (tau + 2.0 * tau_w)
    integrand = psi_bar_dot(modes, tau - nodes) * g_star
    boundary_term = float(wts @ integrand)
    return 0.5 * dl * dl * (modes.psi_zero + boundary_term)


def optimal_variance(
    modes: ModeDecomposition, tau: float, delta_lambda: float, beta: float
) -> float:
    """Optimal variance of the time-averaged work per spin,
    (beta dl^2/4)[psi_bar(0) + boundary term] = (beta/2) * optimal work.

    Linear in beta; beta = inf (the T = 0 preparation) makes it diverge,
    so non-finite or non-positive beta is rejected.
    """
    beta = float(beta)
    if not np.isfinite(beta) or beta <= 0:
        raise ValueError(
            "beta must be finite and > 0: at T = 0 (beta = infinity) the "
            "optimal variance of the time-averaged work diverges"
        )
    return 0.5 * beta * optimal_ta_excess_work(modes, tau, delta_lambda)


@dataclass(frozen=True)
class WorkReport:
    """Excess-work summary for one schedule.

    Work values are per spin in units of J (delta_lambda in J); `variance`
    (units J^2) and `beta` (units 1/J) are present only when a variance
    was requested.
    """

    w_ex: float
    w_ex_ta: float
    tau: float
    protocol_kind: str
    variance: float | None = None
    beta: float | None = None
    units: str = "w in J per spin; tau in hbar/J"


def work_report(
    modes: ModeDecomposition,
    protocol: Protocol,
    delta_lambda: float,
    beta: float | None = None,
) -> WorkReport:
    """Evaluate both kernels on one schedule; add the optimal variance when
    beta is given (computed at the schedule's tau)."""
    w_ex = excess_work(modes, KernelKind.CONVENTIONAL, protocol, delta_lambda)
    w_ex_ta = excess_work(modes, KernelKind.TIME_AVERAGED, protocol, delta_lambda)
    variance = None
    if beta is not None:
        variance = optimal_variance(modes, protocol.tau, delta_lambda, beta)
    return WorkReport(
        w_ex=w_ex,
        w_ex_ta=w_ex_ta,
        tau=protocol.tau,
        protocol_kind=protocol.kind,
        variance=variance,
        beta=beta,
    )
