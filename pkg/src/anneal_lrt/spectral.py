"""Single-mode energies and relaxation-mode construction for the driven
transverse-field Ising chain.

The equilibrium relaxation kernel of the finite chain is a sum of N/2
cosine modes; this module builds the (amplitude, frequency) table that
every other module consumes.  All quantities are stored in natural units:
energies in J, times in hbar/J.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .backend import kernels

# |delta_gamma / gamma0| above this is outside the weak-driving regime
WEAK_DRIVE_RATIO = 0.1


@dataclass(frozen=True)
class ChainParams:
    """Physical parameters of the chain.

    Attributes
    ----------
    j : float
        Nearest-neighbour coupling energy, > 0.
    gamma0 : float
        Initial transverse field, >= 0.
    n_spins : int
        Number of spins N; must be even and >= 2 (the mode sum runs over
        n = 1 .. N/2).
    delta_gamma : float
        Field increment applied by the drive.  The computation is valid
        for |delta_gamma/gamma0| << 1; larger ratios are allowed but
        flagged with a UserWarning.
    hbar : float
        Reduced Planck constant, > 0 (1 in natural units).
    """

    j: float
    gamma0: float
    n_spins: int
    delta_gamma: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("j", "gamma0", "delta_gamma", "hbar"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.j <= 0:
            raise ValueError("j must be > 0")
        if self.gamma0 < 0:
            raise ValueError("gamma0 must be >= 0")
        if self.hbar <= 0:
            raise ValueError("hbar must be > 0")
        n = self.n_spins
        if not isinstance(n, (int, np.integer)):
            raise ValueError("n_spins must be an integer")
        if n < 2:
            raise ValueError("n_spins must be >= 2")
        if n % 2 != 0:
            raise ValueError("n_spins must be even")
        if not self.weak_driving:
            warnings.warn(
                "|delta_gamma/gamma0| = "
                f"{self._drive_ratio():.3g} exceeds {WEAK_DRIVE_RATIO}; "
                "outside the weak-driving validity regime",
                UserWarning,
                stacklevel=2,
            )

    def _drive_ratio(self) -> float:
        if self.gamma0 > 0:
            return abs(self.delta_gamma) / self.gamma0
        return np.inf if self.delta_gamma != 0 else 0.0

    @property
    def weak_driving(self) -> bool:
        return self._drive_ratio() <= WEAK_DRIVE_RATIO


def _thetas(params: ChainParams) -> np.ndarray:
    n = np.arange(1, params.n_spins // 2 + 1, dtype=np.float64)
    return (2.0 * n - 1.0) * np.pi / params.n_spins


def _energies(params: ChainParams, theta: np.ndarray) -> np.ndarray:
    # J^2 + G^2 - 2 J G cos(theta) rewritten as (J-G)^2 + 4 J G sin^2(theta/2):
    # near criticality the naive form cancels ~10 digits, this one none.
    j, g = params.j, params.gamma0
    return 2.0 * np.sqrt((j - g) ** 2 + 4.0 * j * g * np.sin(0.5 * theta) ** 2)


def mode_energy(params: ChainParams, n: int) -> float:
    """Single-mode energy eps(n) = 2 sqrt(J^2 + G0^2 - 2 J G0 cos((2n-1)pi/N)).

    Strictly positive for finite N, including at gamma0 = j.
    """
    if not 1 <= n <= params.n_spins // 2:
        raise IndexError(
            f"mode index n = {n} outside 1..N/2 = {params.n_spins // 2}"
        )
    theta = (2.0 * n - 1.0) * np.pi / params.n_spins
    return float(_energies(params, np.array([theta]))[0])


def critical_gap(j: float, n_spins: int) -> float:
    """Smallest mode energy at gamma0 = j: eps(1) = 4 J sin(pi/(2N)) ~ 2 pi J/N.

    This finite-size gap cuts off the critical divergence of the waiting
    time; sweep fits must stay well away from it.
    """
    return 4.0 * j * np.sin(np.pi / (2.0 * n_spins))


@dataclass(frozen=True)
class ModeDecomposition:
    """Cosine-mode table Psi(t) = sum_n A_n cos(omega_n t).

    Amplitudes are in inverse-energy units per spin, frequencies in
    inverse time.  Modes are kept in ascending-frequency order; arrays are
    read-only so instances can be shared freely across threads.
    """

    amplitudes: np.ndarray
    omegas: np.ndarray
    meta: ChainParams | str = "custom"

    def __post_init__(self):
        amps = np.atleast_1d(np.asarray(self.amplitudes, dtype=np.float64))
        omegas = np.atleast_1d(np.asarray(self.omegas, dtype=np.float64))
        if amps.ndim != 1 or omegas.ndim != 1 or amps.shape != omegas.shape:
            raise ValueError("amplitudes and omegas must be 1-d arrays of equal length")
        if amps.shape[0] == 0:
            raise ValueError("at least one mode is required")
        if not np.all(np.isfinite(amps)) or not np.all(np.isfinite(omegas)):
            raise ValueError("mode table must be finite")
        if np.any(amps < 0):
            raise ValueError("amplitudes must be >= 0")
        if np.any(omegas <= 0):
            raise ValueError("frequencies must be > 0")
        order = np.argsort(omegas, kind="stable")
        amps = np.ascontiguousarray(amps[order])
        omegas = np.ascontiguousarray(omegas[order])
        amps.setflags(write=False)
        omegas.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "omegas", omegas)

    @property
    def n_modes(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def psi_zero(self) -> float:
        """Kernel value at t = 0, i.e. sum of amplitudes.

        Evaluated through the same batched reduction as the kernel itself,
        so it matches a t = 0 kernel evaluation bit for bit.
        """
        return float(kernels.psi_many(self.amplitudes, self.omegas, np.zeros(1))[0])


def build_modes(params: ChainParams) -> ModeDecomposition:
    """Mode table of the chain's relaxation kernel per spin:
    A_n = (16/N) (J^2/eps^3(n)) sin^2((2n-1)pi/N), omega_n = 2 eps(n)/hbar.
    """
    theta = _thetas(params)
    eps = _energies(params, theta)
    amps = (16.0 / params.n_spins) * (params.j ** 2 / eps ** 3) * np.sin(theta) ** 2
    omegas = 2.0 * eps / params.hbar
    return ModeDecomposition(amplitudes=amps, omegas=omegas, meta=params)


def ising_waiting_time(params: ChainParams) -> float:
    """Time-averaged waiting time straight from the chain's energy sums:

        tau_w = [sum_n pi hbar sin^2(theta_n)/eps^4(n)]
              / [sum_n 4 sin^2(theta_n)/eps^3(n)]

    Algebraically identical to the generic mode-table route in
    `kernels.waiting_time`; both are exposed and cross-checked in tests.
    """
    theta = _thetas(params)
    eps = _energies(params, theta)
    s2 = np.sin(theta) ** 2
    num = kernels.csum(np.pi * params.hbar * s2 / eps ** 4)
    den = kernels.csum(4.0 * s2 / eps ** 3)
    return num / den
