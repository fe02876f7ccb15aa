import math

import numpy as np
import pytest

from qubit_landauer import CavitySpec, DomainError, ResourceError, ThermalEnvironment, TruncationError
from qubit_landauer import oracle
from qubit_landauer.cavity import mode_frequency, mode_function
from qubit_landauer.thermal import thermal_weights


@pytest.fixture
def one_mode():
    spec = CavitySpec(1.0, 0.3, 2)
    w = mode_frequency(1, spec)
    return spec, ThermalEnvironment(w / math.log(2), spec)  # nbar_1 = 1


def test_initial_vacuum_ground():
    spec = CavitySpec(1.0, 0.3, 1)
    env = ThermalEnvironment(1e-3, spec)
    state = oracle.build_joint_initial(0.0, env, [1], [3])
    expected = np.zeros((8, 8))
    expected[4, 4] = 1.0  # |0> is the second qubit index
    np.testing.assert_array_equal(state.matrix, expected)


def test_initial_thermal_weights(one_mode):
    spec, env = one_mode
    state = oracle.build_joint_initial(0.2, env, [1], [9], tail_tol=1e-3)
    assert np.trace(state.matrix) == pytest.approx(1.0, abs=1e-15)
    field = oracle.reduce_environment(state)[0]
    expected = 0.5 ** np.arange(1, 11) / (1 - 0.5 ** 10)
    np.testing.assert_allclose(np.diag(field).real, expected, rtol=1e-14)
    np.testing.assert_allclose(oracle.reduce_system(state).matrix, [[0.2, 0.4], [0.4, 0.8]], atol=1e-15)


def test_initial_mixed_variant(one_mode):
    spec, env = one_mode
    state = oracle.build_joint_initial(0.2, env, [1], [30], coherent=False)
    np.testing.assert_allclose(oracle.reduce_system(state).matrix, np.diag([0.2, 0.8]), atol=1e-15)


def test_cutoff_too_small(one_mode):
    spec, env = one_mode
    with pytest.raises(TruncationError):
        oracle.build_joint_initial(0.2, env, [1], [5])


def test_dimension_cap(one_mode):
    spec, env = one_mode
    with pytest.raises(ResourceError):
        oracle.build_hamiltonian("x", 0.1, spec, [1, 2], [63, 63], 1.0)


def test_hand_assembled_four_by_four():
    spec = CavitySpec(1.0, 0.3, 1)
    lam, omega = 0.1, 2.5
    w, u = mode_frequency(1, spec), mode_function(1, 0.3, spec)
    g = lam * u
    # basis |1,0>, |1,1>, |0,0>, |0,1>
    expected = np.array([
        [omega / 2, 0, 0, g],
        [0, omega / 2 + w, g, 0],
        [0, g, -omega / 2, 0],
        [g, 0, 0, -omega / 2 + w],
    ])
    ham = oracle.build_hamiltonian("x", lam, spec, [1], [1], omega)
    np.testing.assert_allclose(ham.matrix, expected, atol=1e-15)


def test_zero_coupling_is_free(one_mode):
    spec, _ = one_mode
    ham = oracle.build_hamiltonian("x", 0.0, spec, [1], [4], 1.7)
    assert np.count_nonzero(ham.matrix - np.diag(np.diag(ham.matrix))) == 0


@pytest.mark.parametrize("kind", ["x", "z"])
def test_hamiltonian_hermitian(kind):
    spec = CavitySpec(1.234, 0.52345, 3)
    ham = oracle.build_hamiltonian(kind, 0.3, spec, [1, 3], [6, 4], 2.0)
    assert np.max(np.abs(ham.matrix - ham.matrix.conj().T)) <= 1e-14


def test_dephasing_coupling_commutes_with_qubit():
    spec = CavitySpec(1.234, 0.52345, 2)
    ham = oracle.build_hamiltonian("z", 0.7, spec, [1, 2], [5, 5], 3.0)
    comm = ham.free_qubit @ ham.interaction - ham.interaction @ ham.free_qubit
    assert np.max(np.abs(comm)) == 0.0
    ham_x = oracle.build_hamiltonian("x", 0.7, spec, [1, 2], [5, 5], 3.0)
    assert np.max(np.abs(ham_x.free_qubit @ ham_x.interaction - ham_x.interaction @ ham_x.free_qubit)) > 0


def test_unknown_coupling_kind():
    with pytest.raises(DomainError):
        oracle.build_hamiltonian("y", 0.1, CavitySpec(1.0, 0.3, 1), [1], [2], 1.0)


class TestEvolve:
    @pytest.fixture
    def setup(self, one_mode):
        spec, env = one_mode
        ham = oracle.build_hamiltonian("x", 0.4, spec, [1], [30], mode_frequency(1, spec))
        return spec, env, ham, oracle.build_joint_initial(0.3, env, [1], [30])

    def test_zero_time(self, setup):
        _, _, ham, start = setup
        np.testing.assert_allclose(oracle.evolve(start, ham, 0.0).matrix, start.matrix, atol=1e-14)

    def test_unitarity_invariants(self, setup):
        _, _, ham, start = setup
        final = oracle.evolve(start, ham, 2.3)
        m = final.matrix
        assert np.trace(m).real == pytest.approx(1.0, abs=1e-10)
        assert np.max(np.abs(m - m.conj().T)) <= 1e-10
        assert np.linalg.eigvalsh(m)[0] >= -1e-10
        assert final.purity() == pytest.approx(start.purity(), abs=1e-10)

    def test_free_evolution_keeps_populations(self, one_mode):
        spec, env = one_mode
        ham = oracle.build_hamiltonian("x", 0.0, spec, [1], [30], 1.3)
        start = oracle.build_joint_initial(0.3, env, [1], [30])
        final = oracle.evolve(start, ham, 5.0)
        np.testing.assert_allclose(np.diag(final.matrix).real, np.diag(start.matrix).real, atol=1e-14)
        # free rotation only changes the coherence phase
        rho = oracle.interaction_picture_qubit(oracle.reduce_system(final), 1.3, 5.0)
        np.testing.assert_allclose(rho.matrix, oracle.reduce_system(start).matrix, atol=1e-13)

    def test_leakage_detected(self):
        spec = CavitySpec(1.0, 0.3, 1)
        env = ThermalEnvironment(1e-3, spec)
        ham = oracle.build_hamiltonian("x", 3.0, spec, [1], [2], mode_frequency(1, spec))
        start = oracle.build_joint_initial(1.0, env, [1], [2])
        with pytest.raises(TruncationError):
            oracle.evolve(start, ham, 1.0)

    def test_mismatched_spaces(self, setup):
        spec, env, ham, _ = setup
        other = oracle.build_joint_initial(0.3, env, [1], [31])
        with pytest.raises(DomainError):
            oracle.evolve(other, ham, 1.0)


class TestReductions:
    def test_product_state_factors(self, one_mode):
        spec, env = one_mode
        state = oracle.build_joint_initial(0.4, env, [1], [30])
        q = thermal_weights(1.0, 30)
        np.testing.assert_allclose(oracle.reduce_environment(state)[0], np.diag(q / q.sum()), atol=1e-15)

    def test_two_mode_partial_traces(self):
        spec = CavitySpec(1.0, 0.3, 2)
        env = ThermalEnvironment(2.0, spec)
        state = oracle.build_joint_initial(0.4, env, [1, 2], [12, 8])
        rho1, rho2 = oracle.reduce_environment(state)
        assert rho1.shape == (13, 13) and rho2.shape == (9, 9)
        energy = oracle.environment_energy(state, spec)
        by_hand = sum(mode_frequency(j, spec) * np.dot(np.arange(r.shape[0]), np.diag(r).real)
                      for j, r in zip((1, 2), (rho1, rho2)))
        assert energy == pytest.approx(by_hand, rel=1e-14)
        # total energy from the full joint diagonal agrees with the mode-by-mode sum
        dims = state.dims
        diag = np.diag(state.matrix).real.reshape(dims)
        n1 = np.arange(dims[1])[None, :, None]
        n2 = np.arange(dims[2])[None, None, :]
        joint = np.sum(diag * (mode_frequency(1, spec) * n1 + mode_frequency(2, spec) * n2))
        assert energy == pytest.approx(joint, rel=1e-13)

    def test_thermal_energy(self, one_mode):
        spec, env = one_mode
        state = oracle.build_joint_initial(0.4, env, [1], [60])
        assert oracle.environment_energy(state, spec) == pytest.approx(mode_frequency(1, spec) * 1.0, rel=1e-12)

    def test_dephasing_keeps_populations(self):
        spec = CavitySpec(1.234, 0.52345, 2)
        env = ThermalEnvironment(3.0, spec)
        ham = oracle.build_hamiltonian("z", 1.0, spec, [1, 2], [20, 14], 2.0)
        start = oracle.build_joint_initial(0.2, env, [1, 2], [20, 14])
        for T in (0.4, 1.9):
            rho = oracle.reduce_system(oracle.evolve(start, ham, T))
            assert rho.excited_population == pytest.approx(0.2, abs=1e-10)
