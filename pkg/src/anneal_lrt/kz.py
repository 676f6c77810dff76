"""Critical-point sweeps of the time-averaged waiting time and power-law
divergence fits.

As gamma0 -> j the waiting time diverges; at finite N the divergence is
cut off by the finite-size gap eps(1) ~ 2 pi J / N, so fits carry a guard
that rejects windows contaminated by saturation.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .kernels import KernelKind, waiting_time
from .spectral import ChainParams, build_modes, critical_gap

# finite-size gap must sit this far below every fitted delta
SATURATION_GUARD_FACTOR = 10.0


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares line on (log delta, log tau_w) over a delta window."""

    exponent: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    n_points: int


@dataclass(frozen=True)
class SweepResult:
    """Waiting-time sweep over control distances delta = |j - gamma0|,
    sorted by delta descending.  `fit` stays None until `fit_power_law`."""

    j: float
    hbar: float
    deltas: np.ndarray
    n_spins: np.ndarray
    tau_w: np.ndarray
    fit: PowerLawFit | None = None

    def __post_init__(self):
        deltas = np.atleast_1d(np.asarray(self.deltas, dtype=np.float64))
        n_spins = np.atleast_1d(np.asarray(self.n_spins, dtype=np.int64))
        tau_w = np.atleast_1d(np.asarray(self.tau_w, dtype=np.float64))
        if not (deltas.shape == n_spins.shape == tau_w.shape):
            raise ValueError("deltas, n_spins and tau_w must have equal length")
        if np.any(np.diff(deltas) > 0):
            raise ValueError("points must be sorted by delta descending")
        if np.any(tau_w <= 0):
            raise ValueError("waiting times must be > 0")
        for name, arr in (("deltas", deltas), ("n_spins", n_spins), ("tau_w", tau_w)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def points(self) -> list[tuple[float, int, float]]:
        return [
            (float(d), int(n), float(t))
            for d, n, t in zip(self.deltas, self.n_spins, self.tau_w)
        ]


def sweep_waiting_time(
    j: float, deltas, n_spins: int, hbar: float = 1.0
) -> SweepResult:
    """Time-averaged waiting time at gamma0 = j - delta for each delta.

    delta = 0 is allowed at finite N (all mode energies stay positive).
    """
    deltas = np.atleast_1d(np.asarray(deltas, dtype=np.float64))
    if deltas.size == 0:
        raise ValueError("need at least one delta")
    if np.any(~np.isfinite(deltas)) or np.any(deltas < 0):
        raise ValueError("deltas must be finite and >= 0")
    if np.any(deltas > j):
        raise ValueError("deltas must not exceed j (gamma0 would be negative)")
    order = np.argsort(deltas, kind="stable")[::-1]
    deltas = deltas[order]
    tw = np.empty_like(deltas)
    for i, d in enumerate(deltas):
        params = ChainParams(j=j, gamma0=j - float(d), n_spins=int(n_spins), hbar=hbar)
        tw[i] = waiting_time(build_modes(params), KernelKind.TIME_AVERAGED)
    return SweepResult(
        j=float(j),
        hbar=float(hbar),
        deltas=deltas,
        n_spins=np.full(deltas.shape, int(n_spins), dtype=np.int64),
        tau_w=tw,
    )


def fit_power_law(result: SweepResult, window: tuple[float, float]) -> SweepResult:
    """Fit log tau_w = exponent * log delta + intercept over the window
    [window[0], window[1]] (inclusive); returns a copy with `fit` set.

    Rejects windows containing delta = 0, fewer than 3 points, or any
    point whose finite-size gap is not below delta/SATURATION_GUARD_FACTOR.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi:
        raise ValueError(f"invalid window {window!r}")
    mask = (result.deltas >= lo) & (result.deltas <= hi)
    n_pts = int(np.count_nonzero(mask))
    if n_pts < 3:
        raise ValueError(f"window contains {n_pts} points; need >= 3")
    d = result.deltas[mask]
    if np.any(d <= 0):
        raise ValueError("window must contain only delta > 0")
    gaps = np.array([critical_gap(result.j, int(n)) for n in result.n_spins[mask]])
    if np.any(gaps >= d / SATURATION_GUARD_FACTOR):
        worst = int(np.argmax(gaps / d))
        raise ValueError(
            "finite-size contaminated window: gap "
            f"{gaps[worst]:.3e} >= delta/{SATURATION_GUARD_FACTOR:g} = "
            f"{d[worst] / SATURATION_GUARD_FACTOR:.3e} at delta = {d[worst]:.3e}, "
            f"N = {int(result.n_spins[mask][worst])}"
        )
    x = np.log(d)
    y = np.log(result.tau_w[mask])
    exponent, intercept = np.polyfit(x, y, 1)
    resid = y - (exponent * x + intercept)
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res < 1e-20 else 0.0
    else:
        r_squared = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    fit = PowerLawFit(
        exponent=float(exponent),
        intercept=float(intercept),
        r_squared=r_squared,
        window=(lo, hi),
        n_points=n_pts,
    )
    return dataclasses.replace(result, fit=fit)
