"""Brute-force reference: exact evolution of qubit (x) truncated Fock modes.

The joint state lives on ``C^2 (x) C^(n_1+1) (x) ...`` with the qubit as the
slowest index. The Schrodinger-picture Hamiltonian

    H = (Omega/2) sigma_z + sum_j omega_j a_j^dag a_j + lambda m sum_j u_j (a_j + a_j^dag)

is diagonalized once and the state propagated as ``V e^{-iET} V^dag``, so the
oracle carries no time-stepping error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cavity import CavitySpec, mode_frequency, mode_function
from .errors import DomainError, ResourceError, TruncationError
from .qubit import QubitDensityMatrix
from .thermal import ThermalEnvironment, thermal_weights, truncated_mass

DIMENSION_CAP = 4096
LEAKAGE_TOL = 1e-6

SIGMA_Z = np.diag([1.0, -1.0])  # basis (|1>, |0>)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class JointFockState:
    modes: tuple
    cutoffs: tuple
    matrix: np.ndarray

    @property
    def dims(self) -> tuple:
        return (2,) + tuple(n + 1 for n in self.cutoffs)

    def tensor(self) -> np.ndarray:
        """Density matrix reshaped to ``dims + dims``."""
        return self.matrix.reshape(self.dims + self.dims)

    def purity(self) -> float:
        return float(np.real(np.einsum("ij,ji->", self.matrix, self.matrix)))


def _dimension(cutoffs) -> int:
    dim = 2 * math.prod(n + 1 for n in cutoffs)
    if dim > DIMENSION_CAP:
        raise ResourceError(f"joint dimension {dim} exceeds cap {DIMENSION_CAP}")
    return dim


def build_joint_initial(p: float, env: ThermalEnvironment, modes, cutoffs,
                        coherent: bool = True, tail_tol: float = 1e-6) -> JointFockState:
    """Product of the qubit state and the truncated, renormalized thermal field.

    ``coherent`` selects the pure superposition; otherwise the diagonal
    mixture with the same populations is used.
    """
    modes, cutoffs = tuple(int(j) for j in modes), tuple(int(n) for n in cutoffs)
    if len(modes) != len(cutoffs):
        raise DomainError("one cutoff per mode is required")
    _dimension(cutoffs)
    rho_S = QubitDensityMatrix.pure(p) if coherent else QubitDensityMatrix.mixed(p)
    rho = rho_S.matrix
    for j, n_max in zip(modes, cutoffs):
        nbar = env.occupation(j)
        tail = 1.0 - truncated_mass(nbar, n_max)
        if tail > tail_tol:
            raise TruncationError(
                f"cutoff {n_max} for mode {j} discards thermal weight {tail:.3e} > {tail_tol:.1e}"
            )
        q = thermal_weights(nbar, n_max)
        rho = np.kron(rho, np.diag(q / q.sum()))
    return JointFockState(modes, cutoffs, rho)


def annihilation(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1)


def _embed(qubit_op, mode_ops, cutoffs):
    out = qubit_op
    for op, n_max in zip(mode_ops, cutoffs):
        out = np.kron(out, np.eye(n_max + 1) if op is None else op)
    return out


@dataclass(eq=False)
class JointHamiltonian:
    """Dense Hermitian Hamiltonian with a lazily cached eigendecomposition."""

    matrix: np.ndarray
    free_qubit: np.ndarray
    interaction: np.ndarray
    modes: tuple
    cutoffs: tuple

    @cached_property
    def eigensystem(self):
        return np.linalg.eigh(self.matrix)

    def propagator(self, T: float) -> np.ndarray:
        energies, vectors = self.eigensystem
        return (vectors * np.exp(-1j * energies * T)) @ vectors.conj().T


def build_hamiltonian(coupling_kind: str, coupling: float, spec: CavitySpec, modes, cutoffs,
                      omega_qubit: float) -> JointHamiltonian:
    """``coupling_kind`` is ``"x"`` (energy exchange) or ``"z"`` (pure dephasing)."""
    if coupling_kind not in ("x", "z"):
        raise DomainError(f"coupling kind must be 'x' or 'z', got {coupling_kind!r}")
    modes, cutoffs = tuple(int(j) for j in modes), tuple(int(n) for n in cutoffs)
    dim = _dimension(cutoffs)
    monopole = SIGMA_X if coupling_kind == "x" else SIGMA_Z
    h_s = _embed(0.5 * omega_qubit * SIGMA_Z, [None] * len(modes), cutoffs)
    h_e = np.zeros((dim, dim))
    field = np.zeros((dim, dim))
    for k, (j, n_max) in enumerate(zip(modes, cutoffs)):
        a = annihilation(n_max)
        ops = [None] * len(modes)
        ops[k] = a.T @ a
        h_e += mode_frequency(j, spec) * _embed(np.eye(2), ops, cutoffs)
        ops[k] = a + a.T
        field += mode_function(j, spec.qubit_position, spec) * _embed(monopole, ops, cutoffs)
    h_int = coupling * field
    return JointHamiltonian(h_s + h_e + h_int, h_s, h_int, modes, cutoffs)


def top_level_population(state: JointFockState) -> float:
    """Largest population found in any mode's highest retained Fock level."""
    worst = 0.0
    for rho in reduce_environment(state):
        worst = max(worst, float(rho[-1, -1].real))
    return worst


def evolve(state: JointFockState, hamiltonian: JointHamiltonian, T: float,
           leakage_tol: float = LEAKAGE_TOL) -> JointFockState:
    """``rho(T) = e^{-iHT} rho e^{iHT}``."""
    if T < 0:
        raise DomainError(f"duration must be non-negative, got {T}")
    if (state.modes, state.cutoffs) != (hamiltonian.modes, hamiltonian.cutoffs):
        raise DomainError("state and Hamiltonian act on different mode spaces")
    u = hamiltonian.propagator(T)
    out = JointFockState(state.modes, state.cutoffs, u @ state.matrix @ u.conj().T)
    leak = top_level_population(out)
    if leak > leakage_tol:
        raise TruncationError(f"top Fock level holds population {leak:.3e}; enlarge the cutoff")
    return out


def reduce_system(state: JointFockState) -> QubitDensityMatrix:
    t = state.matrix.reshape(2, -1, 2, state.matrix.shape[0] // 2)
    return QubitDensityMatrix(np.einsum("ikjk->ij", t))


def reduce_environment(state: JointFockState) -> list[np.ndarray]:
    """Single-mode reduced density matrices, in mode order."""
    n = len(state.modes)
    t = state.tensor()
    letters = "abcdefghijklmnopqrstuvwxyz"
    out = []
    for k in range(1, n + 1):
        row = list(letters[: n + 1])
        col = list(row)
        col[k] = letters[n + 1 + k]
        spec = "".join(row) + "".join(col) + "->" + row[k] + col[k]
        out.append(np.einsum(spec, t))
    return out


def environment_energy(state: JointFockState, spec: CavitySpec) -> float:
    """``Tr(H_E rho)`` from the diagonal of each mode's reduced state."""
    total = 0.0
    for j, rho in zip(state.modes, reduce_environment(state)):
        total += mode_frequency(j, spec) * float(np.dot(np.arange(rho.shape[0]), np.diag(rho).real))
    return total


def interaction_picture_qubit(rho: QubitDensityMatrix, omega_qubit: float, T: float) -> QubitDensityMatrix:
    """Undo the free qubit rotation: ``<1|rho_I|0> = e^{i Omega T} <1|rho|0>``."""
    m = rho.matrix.copy()
    phase = np.exp(1j * omega_qubit * T)
    m[0, 1] *= phase
    m[1, 0] *= np.conj(phase)
    return QubitDensityMatrix(m)
