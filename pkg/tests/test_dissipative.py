import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubit_landauer import CavitySpec, DomainError, QubitDensityMatrix, ThermalEnvironment
from qubit_landauer import dissipative as dz
from qubit_landauer import oracle
from qubit_landauer.cavity import ModeOverlap, mode_frequency, mode_function, mode_overlap, mode_overlaps
from qubit_landauer.errors import PerturbationBreakdownError
from qubit_landauer.thermal import occupation_moments


def resonant(spec, j, T):
    return [mode_overlap(j, mode_frequency(j, spec), T, spec)]


@pytest.fixture
def frozen():
    # every mode frozen: nbar underflows to zero
    spec = CavitySpec(1.0, 0.3, 3)
    return spec, ThermalEnvironment(1e-3, spec)


def test_ground_state_inert(frozen):
    spec, env = frozen
    ov = resonant(spec, 1, 2.0)
    assert dz.delta_p(0.0, env, ov, 0.1)[0] == 0.0
    assert dz.delta_d(0.0, env, ov, 0.1)[0] == 0.0
    assert dz.heat(0.0, env, ov, 0.1) == 0.0


def test_spontaneous_emission(frozen):
    spec, env = frozen
    lam, ov = 0.1, resonant(spec, 2, 1.5)
    w = lam ** 2 * abs(ov[0].I_minus) ** 2
    assert dz.delta_p(1.0, env, ov, lam)[0] == pytest.approx(-w, rel=1e-15)
    assert dz.heat(1.0, env, ov, lam) == pytest.approx(mode_frequency(2, spec) * w, rel=1e-15)


def test_half_coherence_loss(frozen):
    spec, env = frozen
    lam, ov = 0.1, resonant(spec, 1, 1.0)
    assert dz.delta_d(0.5, env, ov, lam)[0] == pytest.approx(lam ** 2 * abs(ov[0].I_minus) ** 2 / 4, rel=1e-15)


def test_fig1_cold_signs(fig_cavity, cold_env):
    lam = 0.01
    out = dz.solve(0.2, cold_env, resonant(fig_cavity, 20, 30.0), lam)
    u = mode_function(20, fig_cavity.qubit_position, fig_cavity)
    assert out.delta_p < 0
    assert out.delta_p == pytest.approx(-0.2 * lam ** 2 * 30.0 ** 2 * u ** 2, rel=1e-15)
    assert out.heat > 0


def test_fig1_hot_heat_negative_and_delta_d_growing(fig_cavity, hot_env):
    times = np.linspace(0.5, 50, 40)
    outs = [dz.solve(0.2, hot_env, resonant(fig_cavity, 20, T), 0.01) for T in times]
    assert all(o.heat < 0 for o in outs)
    dd = [o.delta_d for o in outs]
    assert np.all(np.diff(dd) > 0)


def test_sign_of_population_shift():
    spec = CavitySpec(1.0, 0.3, 1)
    env = ThermalEnvironment(5.0, spec)
    nbar = env.occupation(1)
    threshold = nbar / (2 * nbar + 1)
    ov = resonant(spec, 1, 1.0)
    assert dz.delta_p(threshold * 0.9, env, ov, 0.05)[0] > 0
    assert dz.delta_p(threshold * 1.1, env, ov, 0.05)[0] < 0


def test_population_domain(cold_env, fig_cavity):
    with pytest.raises(DomainError):
        dz.delta_p(1.2, cold_env, resonant(fig_cavity, 20, 1.0), 0.01)


@settings(max_examples=200, deadline=None)
@given(p=st.floats(0, 1), T_E=st.floats(0.1, 100), T=st.floats(0, 60),
       lam=st.floats(0, 0.02), detune=st.floats(-3, 3))
def test_mode_resolved_bookkeeping(p, T_E, T, lam, detune):
    spec = CavitySpec(1.234, 0.52345, 40)
    env = ThermalEnvironment(T_E, spec)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", dz.PerturbativeWarning)
        out = dz.solve(p, env, mode_overlaps(mode_frequency(20, spec) + detune, T, spec), lam)
    w = np.array([mode_frequency(j, spec) for j in out.modes])
    np.testing.assert_allclose(out.heat_modes, -w * out.delta_p_modes, rtol=1e-14, atol=0)
    assert np.all(out.delta_d_modes >= 0)
    assert out.delta_d >= 0
    assert out.heat == pytest.approx(dz.heat(p, env, mode_overlaps(mode_frequency(20, spec) + detune, T, spec), lam),
                                     rel=1e-12, abs=1e-300)


def test_multimode_sum_reduces_to_resonant(fig_cavity, cold_env):
    w = mode_frequency(20, fig_cavity)
    single = dz.solve(0.2, cold_env, resonant(fig_cavity, 20, 40.0), 0.01)
    full = dz.solve(0.2, cold_env, mode_overlaps(w, 40.0, fig_cavity), 0.01)
    assert full.modes == tuple(range(1, 201))
    # off-resonant modes add a small correction only
    assert full.delta_d == pytest.approx(single.delta_d, rel=0.02)


def test_validity_warning(frozen):
    spec, env = frozen
    with pytest.warns(dz.PerturbativeWarning):
        dz.solve(0.5, env, resonant(spec, 1, 10.0), 1.0)


class TestEvolvedState:
    def test_identity(self):
        rho = QubitDensityMatrix.pure(0.2)
        np.testing.assert_array_equal(dz.evolved_qubit_state(rho, 0.0, 0.0).matrix, rho.matrix)

    def test_arithmetic(self):
        out = dz.evolved_qubit_state(QubitDensityMatrix.pure(0.2), -0.01, 0.02).matrix
        assert out[0, 0] == pytest.approx(0.19)
        assert out[0, 1] == pytest.approx(0.38)
        assert out[1, 0] == out[0, 1]
        assert np.trace(out) == 1.0

    def test_breakdown(self):
        with pytest.raises(PerturbationBreakdownError):
            dz.evolved_qubit_state(QubitDensityMatrix.pure(0.2), -0.3, 0.0)


class TestEnvironmentUpdate:
    def test_inert_vacuum(self, frozen):
        spec, env = frozen
        (up,) = dz.environment_diagonal_update(0.0, env, resonant(spec, 1, 1.0), 0.1, 5)
        assert not np.any(up.total)

    def test_single_photon_emission(self, frozen):
        spec, env = frozen
        ov = resonant(spec, 1, 1.0)
        w = 0.01 * abs(ov[0].I_minus) ** 2
        (up,) = dz.environment_diagonal_update(1.0, env, ov, 0.1, 5)
        expected = np.zeros(7)
        expected[0], expected[1] = -w, w
        np.testing.assert_allclose(up.total, expected, rtol=1e-14, atol=0)

    @given(p=st.floats(0, 1), T_E=st.floats(0.5, 200))
    def test_probability_balance(self, p, T_E):
        spec = CavitySpec(1.234, 0.52345, 20)
        env = ThermalEnvironment(T_E, spec)
        ups = dz.environment_diagonal_update(p, env, mode_overlaps(30.0, 2.0, spec, [1, 5, 20]), 0.05, 60)
        for up in ups:
            assert abs(up.total.sum()) < 1e-12

    def test_heat_rederived_from_traces(self, hot_env, fig_cavity):
        """Energy of the traced field update equals the closed-form heat."""
        p, lam = 0.2, 0.01
        ov = resonant(fig_cavity, 20, 25.0)
        nbar = hot_env.occupation(20)
        (up,) = dz.environment_diagonal_update(p, hot_env, ov, lam, 120)
        w = mode_frequency(20, fig_cavity)
        from_traces = up.energy_change(w)
        # same sum done with geometric moments: p E[(n+1)^2] + (1-p) E[n(n-1)] - E[n(n(1-p) + (n+1)p)]
        m1, m2 = occupation_moments(nbar)
        moments = p * (m2 + 2 * m1 + 1) + (1 - p) * (m2 - m1) - ((1 - p) * m2 + p * (m2 + m1))
        weight = lam ** 2 * abs(ov[0].I_minus) ** 2
        assert moments == pytest.approx(p * (nbar + 1) - (1 - p) * nbar, rel=1e-12)
        assert from_traces == pytest.approx(w * weight * moments, rel=1e-10)
        assert from_traces == pytest.approx(dz.heat(p, hot_env, ov, lam), rel=1e-10)


class TestAgainstOracle:
    def run_exact(self, p, spec, env, lam, T, n_max, coherent=True):
        w = mode_frequency(20, spec)
        ham = oracle.build_hamiltonian("x", lam, spec, [20], [n_max], w)
        start = oracle.build_joint_initial(p, env, [20], [n_max], coherent=coherent)
        final = oracle.evolve(start, ham, T)
        rho = oracle.interaction_picture_qubit(oracle.reduce_system(final), w, T)
        heat = oracle.environment_energy(final, spec) - oracle.environment_energy(start, spec)
        return rho, heat

    def test_hot_single_mode_within_two_percent(self, fig_cavity, hot_env):
        p, lam, T = 0.2, 0.01, 40.0
        out = dz.solve(p, hot_env, resonant(fig_cavity, 20, T), lam)
        rho, heat = self.run_exact(p, fig_cavity, hot_env, lam, T, 31)
        assert rho.excited_population - p == pytest.approx(out.delta_p, rel=0.02)
        assert math.sqrt(p * (1 - p)) - abs(rho.coherence) == pytest.approx(out.delta_d, rel=0.02)
        assert heat == pytest.approx(out.heat, rel=0.02)

    def test_mixed_initial_state_same_populations_and_heat(self, fig_cavity, hot_env):
        p, lam, T = 0.35, 0.02, 33.3
        coh, heat_coh = self.run_exact(p, fig_cavity, hot_env, lam, T, 31)
        mix, heat_mix = self.run_exact(p, fig_cavity, hot_env, lam, T, 31, coherent=False)
        assert coh.excited_population == pytest.approx(mix.excited_population, abs=1e-12)
        assert heat_coh == pytest.approx(heat_mix, abs=1e-12)
        assert abs(mix.coherence) < 1e-14
