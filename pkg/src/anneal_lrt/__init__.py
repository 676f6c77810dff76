"""Linear-response work functionals, relaxation kernels and near-optimal
annealing schedules for the driven transverse-field Ising chain."""

from .backend import BACKEND, HAS_NUMBA
from .kernels import (
    KernelKind,
    laplace,
    psi,
    psi_bar,
    psi_bar_dot,
    response_function,
    waiting_time,
)
from .kz import PowerLawFit, SweepResult, fit_power_law, sweep_waiting_time
from .protocols import (
    Protocol,
    custom_protocol,
    linear_ramp,
    midpoint_symmetry_check,
    near_optimal,
    protocol_to_csv,
)
from .spectral import (
    ChainParams,
    ModeDecomposition,
    build_modes,
    critical_gap,
    ising_waiting_time,
    mode_energy,
)
from .work import (
    WorkReport,
    excess_work,
    optimal_ta_excess_work,
    optimal_variance,
    sine_integral,
    work_report,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAS_NUMBA",
    "ChainParams",
    "KernelKind",
    "ModeDecomposition",
    "PowerLawFit",
    "Protocol",
    "SweepResult",
    "WorkReport",
    "build_modes",
    "critical_gap",
    "custom_protocol",
    "excess_work",
    "fit_power_law",
    "ising_waiting_time",
    "laplace",
    "linear_ramp",
    "midpoint_symmetry_check",
    "mode_energy",
    "near_optimal",
    "optimal_ta_excess_work",
    "optimal_variance",
    "protocol_to_csv",
    "psi",
    "psi_bar",
    "psi_bar_dot",
    "response_function",
    "sine_integral",
    "sweep_waiting_time",
    "waiting_time",
    "work_report",
]
