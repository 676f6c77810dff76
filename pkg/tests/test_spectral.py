import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import anneal_lrt as al
from conftest import PSI0_PAPER


class TestChainParams:
    def test_rejects_odd_n_spins(self):
        with pytest.raises(ValueError, match="n_spins must be even"):
            al.ChainParams(j=1.0, gamma0=0.5, n_spins=7)

    def test_rejects_small_n_spins(self):
        with pytest.raises(ValueError, match="n_spins"):
            al.ChainParams(j=1.0, gamma0=0.5, n_spins=0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(j=0.0, gamma0=0.5, n_spins=4),
            dict(j=-1.0, gamma0=0.5, n_spins=4),
            dict(j=1.0, gamma0=-0.1, n_spins=4),
            dict(j=1.0, gamma0=0.5, n_spins=4, hbar=0.0),
            dict(j=np.inf, gamma0=0.5, n_spins=4),
        ],
    )
    def test_rejects_bad_physics(self, kwargs):
        with pytest.raises(ValueError):
            al.ChainParams(**kwargs)

    def test_strong_drive_warns(self):
        with pytest.warns(UserWarning, match="weak-driving"):
            al.ChainParams(j=1.0, gamma0=0.5, n_spins=4, delta_gamma=0.2)

    def test_drive_on_zero_field_warns(self):
        with pytest.warns(UserWarning, match="weak-driving"):
            al.ChainParams(j=1.0, gamma0=0.0, n_spins=4, delta_gamma=0.01)

    def test_weak_drive_is_silent(self, paper_chain):
        assert paper_chain.weak_driving

    def test_critical_field_allowed(self):
        params = al.ChainParams(j=1.0, gamma0=1.0, n_spins=100)
        modes = al.build_modes(params)
        assert np.all(modes.omegas > 0)


class TestModeEnergy:
    def test_zero_field_dispersion_is_flat(self):
        for n_spins in (2, 6, 1000):
            params = al.ChainParams(j=1.0, gamma0=0.0, n_spins=n_spins)
            for n in (1, n_spins // 2):
                assert al.mode_energy(params, n) == pytest.approx(2.0, rel=1e-15)

    def test_critical_n4_first_mode(self):
        # 2 sqrt(2 - sqrt(2)), evaluated directly from the closed form
        params = al.ChainParams(j=1.0, gamma0=1.0, n_spins=4)
        assert al.mode_energy(params, 1) == pytest.approx(1.530733729460359, abs=1e-12)

    @pytest.mark.parametrize("n_spins,tol", [(1000, 1e-6), (10_000, 1e-8)])
    def test_critical_gap_small_angle(self, n_spins, tol):
        # eps(1) -> 4 J sin(pi/(2N)) ~ 2 pi J / N at criticality
        params = al.ChainParams(j=1.0, gamma0=1.0, n_spins=n_spins)
        ratio = al.mode_energy(params, 1) * n_spins / (2.0 * np.pi)
        assert abs(ratio - 1.0) < tol

    def test_out_of_range_mode_index(self):
        params = al.ChainParams(j=1.0, gamma0=0.5, n_spins=8)
        for n in (0, 5, -1):
            with pytest.raises(IndexError):
                al.mode_energy(params, n)

    @given(
        gamma0=st.floats(0.0, 3.0),
        n_half=st.integers(1, 200),
        n=st.integers(1, 200),
    )
    @settings(max_examples=60, deadline=None)
    def test_energy_above_gap(self, gamma0, n_half, n):
        # eps(n) >= 2 |J - gamma0| for every mode
        n = min(n, n_half)
        params = al.ChainParams(j=1.0, gamma0=gamma0, n_spins=2 * n_half)
        assert al.mode_energy(params, n) >= 2.0 * abs(1.0 - gamma0) - 1e-12


class TestBuildModes:
    def test_n2_zero_field_single_mode(self):
        modes = al.build_modes(al.ChainParams(j=1.0, gamma0=0.0, n_spins=2))
        assert modes.n_modes == 1
        assert modes.amplitudes[0] == pytest.approx(1.0, rel=1e-15)
        assert modes.omegas[0] == pytest.approx(4.0, rel=1e-15)

    def test_n4_zero_field_two_modes(self):
        modes = al.build_modes(al.ChainParams(j=1.0, gamma0=0.0, n_spins=4))
        assert modes.n_modes == 2
        np.testing.assert_allclose(modes.amplitudes, [0.25, 0.25], rtol=1e-14)
        np.testing.assert_allclose(modes.omegas, [4.0, 4.0], rtol=1e-15)

    def test_paper_amplitude_sum_regression(self, paper_modes):
        # frozen from an independent 40-digit summation
        assert paper_modes.psi_zero == pytest.approx(PSI0_PAPER, rel=1e-12)

    def test_amplitude_sum_equals_kernel_at_zero(self, paper_modes):
        assert paper_modes.psi_zero == al.psi(paper_modes, 0.0)

    def test_ascending_frequency_order(self, paper_modes):
        assert np.all(np.diff(paper_modes.omegas) >= 0)

    def test_hbar_scales_frequencies_only(self):
        a = al.build_modes(al.ChainParams(j=1.0, gamma0=0.5, n_spins=8))
        b = al.build_modes(al.ChainParams(j=1.0, gamma0=0.5, n_spins=8, hbar=2.0))
        np.testing.assert_allclose(a.amplitudes, b.amplitudes, rtol=0)
        np.testing.assert_allclose(a.omegas, 2.0 * b.omegas, rtol=1e-15)

    def test_riemann_convergence_away_from_criticality(self):
        # doubling N changes the amplitude sum by < 1e-3 at gamma0 = 0.5
        s1 = al.build_modes(al.ChainParams(j=1.0, gamma0=0.5, n_spins=1000)).psi_zero
        s2 = al.build_modes(al.ChainParams(j=1.0, gamma0=0.5, n_spins=2000)).psi_zero
        assert abs(s2 - s1) / s1 < 1e-3


class TestModeDecomposition:
    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="at least one mode"):
            al.ModeDecomposition(amplitudes=np.array([]), omegas=np.array([]))

    def test_rejects_negative_amplitude(self):
        with pytest.raises(ValueError, match="amplitudes"):
            al.ModeDecomposition(amplitudes=np.array([-1.0]), omegas=np.array([1.0]))

    def test_rejects_zero_frequency(self):
        with pytest.raises(ValueError, match="frequencies"):
            al.ModeDecomposition(amplitudes=np.array([1.0]), omegas=np.array([0.0]))

    def test_sorts_by_frequency(self):
        modes = al.ModeDecomposition(
            amplitudes=np.array([1.0, 2.0]), omegas=np.array([5.0, 1.0])
        )
        np.testing.assert_allclose(modes.omegas, [1.0, 5.0])
        np.testing.assert_allclose(modes.amplitudes, [2.0, 1.0])

    def test_arrays_read_only(self, paper_modes):
        with pytest.raises(ValueError):
            paper_modes.amplitudes[0] = 0.0


class TestIsingWaitingTime:
    def test_matches_generic_mode_route(self, paper_chain, paper_modes):
        direct = al.ising_waiting_time(paper_chain)
        generic = al.waiting_time(paper_modes, al.KernelKind.TIME_AVERAGED)
        assert direct == pytest.approx(generic, rel=1e-13)

    def test_matches_generic_on_moderate_chain(self):
        chain = al.ChainParams(j=2.0, gamma0=0.7, n_spins=64, hbar=0.5)
        direct = al.ising_waiting_time(chain)
        generic = al.waiting_time(al.build_modes(chain), al.KernelKind.TIME_AVERAGED)
        assert direct == pytest.approx(generic, rel=1e-13)
