"""Driving schedules g(t) on [0, tau].

Two closed-form families are first-class: the linear ramp g = t/tau and
the near-optimal schedule g = (t + tau_w)/(tau + 2 tau_w), the continuous
linear part of the universal optimal solution (its boundary delta
impulses are intentionally not represented; work functionals consume only
the continuous part).  Both are stored sampled on a grid plus an exact
closed-form tag so downstream integrals can use the exact affine path
instead of interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RAMP = "ramp"
NEAR_OPTIMAL = "near-optimal"
CUSTOM = "custom"

_VALUE_SLACK = 1e-12
DEFAULT_GRID_POINTS = 1001


@dataclass(frozen=True)
class Protocol:
    """A monotone schedule sampled at strictly increasing times 0 .. tau,
    with values in [0, 1].

    `kind` tags the closed form ("ramp", "near-optimal", "custom");
    `waiting_time` is the offset parameter of the near-optimal family
    (0 for a ramp).
    """

    tau: float
    times: np.ndarray
    values: np.ndarray
    kind: str = CUSTOM
    waiting_time: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.tau) or self.tau <= 0:
            raise ValueError(f"tau must be finite and > 0, got {self.tau}")
        if self.kind not in (RAMP, NEAR_OPTIMAL, CUSTOM):
            raise ValueError(f"unknown protocol kind {self.kind!r}")
        if not np.isfinite(self.waiting_time) or self.waiting_time < 0:
            raise ValueError("waiting_time must be finite and >= 0")
        t = np.atleast_1d(np.asarray(self.times, dtype=np.float64))
        g = np.atleast_1d(np.asarray(self.values, dtype=np.float64))
        if t.ndim != 1 or t.shape != g.shape or t.shape[0] < 2:
            raise ValueError("times and values must be equal-length 1-d arrays (>= 2 points)")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(g))):
            raise ValueError("grid must be finite")
        if t[0] != 0.0 or t[-1] != self.tau:
            raise ValueError("grid must start at 0 and end at tau")
        if np.any(np.diff(t) <= 0):
            raise ValueError("grid times must be strictly increasing")
        if np.any(g < -_VALUE_SLACK) or np.any(g > 1.0 + _VALUE_SLACK):
            raise ValueError("values must lie in [0, 1]")
        if np.any(np.diff(g) < -_VALUE_SLACK):
            raise ValueError("values must be nondecreasing")
        t.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", g)

    @property
    def is_affine(self) -> bool:
        """True when an exact affine closed form is available."""
        return self.kind in (RAMP, NEAR_OPTIMAL)

    @property
    def slope(self) -> float:
        """dg/dt of the affine families: 1/(tau + 2 tau_w)."""
        if not self.is_affine:
            raise ValueError("slope is defined only for ramp/near-optimal protocols")
        return 1.0 / (self.tau + 2.0 * self.waiting_time)

    def __call__(self, t):
        """Piecewise-linear evaluation on the stored grid."""
        return np.interp(t, self.times, self.values)


def linear_ramp(tau: float, grid_points: int = DEFAULT_GRID_POINTS) -> Protocol:
    """g(t) = t/tau on a uniform grid; g(0) = 0, g(tau) = 1."""
    if not np.isfinite(tau) or tau <= 0:
        raise ValueError(f"tau must be finite and > 0, got {tau}")
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    times = np.linspace(0.0, tau, grid_points)
    values = np.linspace(0.0, 1.0, grid_points)
    return Protocol(tau=tau, times=times, values=values, kind=RAMP, waiting_time=0.0)


def near_optimal(
    tau: float, waiting_time: float, grid_points: int = DEFAULT_GRID_POINTS
) -> Protocol:
    """g*(t) = (t + tau_w)/(tau + 2 tau_w) on a uniform grid.

    For tau_w > 0 the endpoint values are strictly inside (0, 1): the
    boundary jumps belong to the omitted impulse terms.  Reduces to
    `linear_ramp` when tau_w = 0; collapses to the pausing plateau at 1/2
    when tau << tau_w.
    """
    if not np.isfinite(tau) or tau <= 0:
        raise ValueError(f"tau must be finite and > 0, got {tau}")
    if not np.isfinite(waiting_time) or waiting_time < 0:
        raise ValueError(f"waiting_time must be finite and >= 0, got {waiting_time}")
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    times = np.linspace(0.0, tau, grid_points)
    values = (times + waiting_time) / (tau + 2.0 * waiting_time)
    return Protocol(
        tau=tau, times=times, values=values, kind=NEAR_OPTIMAL, waiting_time=waiting_time
    )


def custom_protocol(times, values) -> Protocol:
    """Wrap explicit (times, values) samples; tau is the last grid time."""
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    if times.shape[0] < 2:
        raise ValueError("need at least two grid points")
    return Protocol(tau=float(times[-1]), times=times, values=values, kind=CUSTOM)


def midpoint_symmetry_check(p: Protocol, tol: float = 1e-12) -> bool:
    """True iff g(tau/2) = 1/2 and g(t) + g(tau - t) = 1 on the grid,
    both within `tol` (holds for every ramp/near-optimal schedule)."""
    if abs(p(0.5 * p.tau) - 0.5) > tol:
        return False
    resid = p.values + p(p.tau - p.times) - 1.0
    return bool(np.max(np.abs(resid)) <= tol)


def protocol_to_csv(p: Protocol) -> str:
    """CSV text: header `t,g`, one row per grid node, 17 significant digits."""
    lines = ["t,g"]
    lines += [f"{t:.17g},{g:.17g}" for t, g in zip(p.times, p.values)]
    return "\n".join(lines) + "\n"
