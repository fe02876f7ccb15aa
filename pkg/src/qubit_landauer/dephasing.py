"""Pure-dephasing coupling ``m = sigma_z``, solved exactly.

The interaction commutes with the qubit Hamiltonian and its two-time
commutator is a c-number, so the propagator is a qubit-conditioned
displacement of every mode,

    U(T) = exp(i phi(T)) exp(sigma_z / 2 * sum_j (alpha_j a_j^dag - alpha_j^* a_j)),
    alpha_j(T) = 2 lambda u_j (1 - exp(i omega_j T)) / omega_j.

The coupling ``lambda`` multiplies every ``u_j``. Functions taking ``T``
accept scalars or arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cavity import CavitySpec, mode_frequencies, mode_frequency, mode_function, mode_functions
from .errors import DomainError
from .qubit import QubitDensityMatrix
from .thermal import ThermalEnvironment


def _check_T(T):
    if np.any(np.asarray(T) < 0):
        raise DomainError("duration must be non-negative")


def _mode_grid(spec, modes, T):
    modes = spec.modes if modes is None else np.asarray(sorted(modes))
    w = mode_frequencies(spec, modes)
    u = mode_functions(spec, modes)
    T = np.asarray(T, dtype=float)
    return modes, w, u, T[..., None] * w


def alpha(j: int, T, spec: CavitySpec, coupling: float = 1.0):
    """Displacement amplitude ``alpha_j(T)``."""
    _check_T(T)
    w = mode_frequency(j, spec)
    u = mode_function(j, spec.qubit_position, spec)
    wt = np.asarray(T, dtype=float) * w
    # 1 - e^{i wT} = -2i sin(wT/2) e^{i wT/2}
    half = wt / 2.0
    return 2.0 * coupling * u * (-2j * np.sin(half) * np.exp(1j * half)) / w


def alpha_sq(T, spec: CavitySpec, coupling: float = 1.0, modes=None) -> np.ndarray:
    """``|alpha_j(T)|^2`` with a trailing mode axis."""
    _check_T(T)
    _, w, u, wt = _mode_grid(spec, modes, T)
    return 16.0 * coupling ** 2 * u ** 2 * np.sin(wt / 2.0) ** 2 / w ** 2


def suppression_factor(T, env: ThermalEnvironment, coupling: float = 1.0, modes=None):
    """Coherence damping ``chi(T) = prod_j exp(-|alpha_j|^2 (2 nbar_j + 1) / 2)``."""
    spec = env.spec
    sel = spec.modes if modes is None else np.asarray(sorted(modes))
    nbar = np.array([env.occupation(j) for j in sel])
    a2 = alpha_sq(T, spec, coupling, sel)
    return np.exp(-0.5 * np.sum(a2 * (2.0 * nbar + 1.0), axis=-1))


def dynamical_phase(T, spec: CavitySpec, coupling: float = 1.0, modes=None):
    """Time-ordering phase ``phi(T) = lambda^2 sum_j u_j^2 (omega_j T - sin omega_j T) / omega_j^2``.

    A global phase of the propagator; it never enters a density matrix.
    """
    _check_T(T)
    _, w, u, wt = _mode_grid(spec, modes, T)
    return coupling ** 2 * np.sum(u ** 2 * (wt - np.sin(wt)) / w ** 2, axis=-1)


def heat_dephasing(T, spec: CavitySpec, coupling: float = 1.0, modes=None):
    """Field energy gain ``sum_j omega_j |alpha_j|^2 / 4``; independent of ``p`` and ``T_E``."""
    sel = spec.modes if modes is None else np.asarray(sorted(modes))
    w = mode_frequencies(spec, sel)
    return np.sum(alpha_sq(T, spec, coupling, sel) * w, axis=-1) / 4.0


def environment_branch_energy(j: int, branch_sign: int, T, env: ThermalEnvironment, coupling: float = 1.0):
    """Mean photon number of mode ``j`` displaced by ``+/- alpha_j / 2``: ``nbar_j + |alpha_j|^2 / 4``."""
    if branch_sign not in (1, -1):
        raise DomainError(f"branch sign must be +1 or -1, got {branch_sign}")
    a = branch_sign * alpha(j, T, env.spec, coupling) / 2.0
    return env.occupation(j) + np.abs(a) ** 2


def dephased_qubit_state(rho_S: QubitDensityMatrix, chi: float) -> QubitDensityMatrix:
    """Multiply the coherences of ``rho_S`` by ``chi``; populations are untouched."""
    if not 0.0 <= chi <= 1.0:
        raise DomainError(f"suppression factor must lie in [0, 1], got {chi}")
    m = rho_S.matrix.copy()
    m[0, 1] *= chi
    m[1, 0] *= chi
    return QubitDensityMatrix(m)


def coherent_entropy_change(p: float, chi):
    """``S(rho_S) - S(rho_S')`` for the pure initial state; never positive."""
    chi = np.asarray(chi, dtype=float)
    r2 = p * (1.0 - p) * chi ** 2
    root = np.sqrt((2.0 * p - 1.0) ** 2 + 4.0 * r2)
    p_plus = 0.5 * (1.0 + root)
    # p_- = det / p_+ avoids cancellation near purity
    p_minus = (p * (1.0 - p) - r2) / p_plus
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -np.where(p_plus > 0, p_plus * np.log(p_plus), 0.0) \
            - np.where(p_minus > 0, p_minus * np.log(p_minus), 0.0)
    return -s


@dataclass(frozen=True)
class DephasingOutcome:
    chi: float
    phase: float
    alphas: np.ndarray
    heat: float
    duration: float


def solve(T: float, env: ThermalEnvironment, coupling: float = 1.0, modes=None) -> DephasingOutcome:
    spec = env.spec
    sel = spec.modes if modes is None else sorted(modes)
    alphas = np.array([complex(alpha(j, T, spec, coupling)) for j in sel])
    return DephasingOutcome(
        chi=float(suppression_factor(T, env, coupling, sel)),
        phase=float(dynamical_phase(T, spec, coupling, sel)),
        alphas=alphas,
        heat=float(heat_dephasing(T, spec, coupling, sel)),
        duration=float(T),
    )
