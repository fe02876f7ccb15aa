"""Energy-exchanging coupling ``m = sigma_x`` at second order in the coupling.

Only the resonant ``|I_-|^2`` terms are kept. The thermal field has no
one-point function, so all odd orders vanish and the leading corrections
are ``O(lambda^2)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .cavity import ModeOverlap, mode_frequency
from .errors import DomainError, PerturbationBreakdownError
from .qubit import QubitDensityMatrix
from .thermal import ThermalEnvironment, thermal_weights

#: ``lambda^2 (nbar + 1) |I_-|^2`` above which the expansion is flagged.
VALIDITY_THRESHOLD = 0.1
#: Most negative eigenvalue tolerated in an evolved qubit state.
BREAKDOWN_TOL = 1e-9


class PerturbativeWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class PerturbativeOutcome:
    delta_p: float
    delta_d: float
    heat: float
    coupling: float
    duration: float
    modes: tuple
    delta_p_modes: np.ndarray
    delta_d_modes: np.ndarray
    heat_modes: np.ndarray


def _check_p(p):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"population must lie in [0, 1], got {p}")


def _mode_arrays(env: ThermalEnvironment, overlaps: list[ModeOverlap], coupling: float):
    overlaps = sorted(overlaps, key=lambda o: o.mode)
    modes = tuple(o.mode for o in overlaps)
    nbar = np.array([env.occupation(j) for j in modes])
    omega = np.array([mode_frequency(j, env.spec) for j in modes])
    weight = coupling ** 2 * np.array([abs(o.I_minus) ** 2 for o in overlaps])
    worst = np.max((nbar + 1.0) * weight, initial=0.0)
    if worst > VALIDITY_THRESHOLD:
        warnings.warn(
            f"lambda^2 (nbar+1) |I_-|^2 = {worst:.3g} exceeds {VALIDITY_THRESHOLD}; "
            "second-order results are unreliable",
            PerturbativeWarning,
            stacklevel=3,
        )
    return modes, nbar, omega, weight


def _delta_p_modes(p, nbar, weight):
    return (nbar * (1.0 - p) - (nbar + 1.0) * p) * weight


def _delta_d_modes(p, nbar, weight):
    return math.sqrt(p * (1.0 - p)) * (nbar + 0.5) * weight


def delta_p(p: float, env: ThermalEnvironment, overlaps: list[ModeOverlap], coupling: float):
    """Excited-population shift; returns ``(total, per_mode)``."""
    _check_p(p)
    _, nbar, _, weight = _mode_arrays(env, overlaps, coupling)
    per_mode = _delta_p_modes(p, nbar, weight)
    return float(np.sum(per_mode)), per_mode


def delta_d(p: float, env: ThermalEnvironment, overlaps: list[ModeOverlap], coupling: float):
    """Coherence loss (never negative); returns ``(total, per_mode)``."""
    _check_p(p)
    _, nbar, _, weight = _mode_arrays(env, overlaps, coupling)
    per_mode = _delta_d_modes(p, nbar, weight)
    return float(np.sum(per_mode)), per_mode


def heat(p: float, env: ThermalEnvironment, overlaps: list[ModeOverlap], coupling: float) -> float:
    """Energy gained by the field, ``sum_j omega_j lambda^2 |I_-|^2 [p (nbar+1) - (1-p) nbar]``."""
    _check_p(p)
    _, nbar, omega, weight = _mode_arrays(env, overlaps, coupling)
    return float(np.sum(omega * weight * (p * (nbar + 1.0) - (1.0 - p) * nbar)))


def solve(p: float, env: ThermalEnvironment, overlaps: list[ModeOverlap], coupling: float) -> PerturbativeOutcome:
    """All second-order quantities for one window, with per-mode breakdown."""
    _check_p(p)
    modes, nbar, omega, weight = _mode_arrays(env, overlaps, coupling)
    dp = _delta_p_modes(p, nbar, weight)
    dd = _delta_d_modes(p, nbar, weight)
    dq = -omega * dp
    duration = overlaps[0].duration if overlaps else 0.0
    return PerturbativeOutcome(
        delta_p=float(np.sum(dp)),
        delta_d=float(np.sum(dd)),
        heat=float(np.sum(dq)),
        coupling=coupling,
        duration=duration,
        modes=modes,
        delta_p_modes=dp,
        delta_d_modes=dd,
        heat_modes=dq,
    )


def evolved_qubit_state(rho_S: QubitDensityMatrix, delta_p: float, delta_d: float) -> QubitDensityMatrix:
    """Add the second-order correction ``[[dp, -dd], [-dd, -dp]]`` to ``rho_S``."""
    correction = np.array([[delta_p, -delta_d], [-delta_d, -delta_p]])
    rho = QubitDensityMatrix(rho_S.matrix + correction)
    lo = rho.eigenvalues()[0]
    if lo < -BREAKDOWN_TOL:
        raise PerturbationBreakdownError(
            f"evolved qubit state has eigenvalue {lo:.3e}; coupling or duration too large"
        )
    return rho


@dataclass(frozen=True)
class ModeDiagonalUpdate:
    """Second-order change of one mode's Fock populations.

    Arrays are indexed by Fock level ``0..n_max + 1``; ``raising`` collects
    the ``|n+1><n+1|`` terms, ``lowering`` the ``|n-1><n-1|`` terms and
    ``depletion`` the ``U2 rho + rho U2^dagger`` loss on ``|n><n|``. Source
    levels run over ``0..n_max``.
    """

    mode: int
    raising: np.ndarray
    lowering: np.ndarray
    depletion: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.raising + self.lowering + self.depletion

    def energy_change(self, omega: float) -> float:
        return float(omega * np.dot(np.arange(self.total.size), self.total))


def environment_diagonal_update(p: float, env: ThermalEnvironment, overlaps: list[ModeOverlap],
                                coupling: float, n_max: int) -> list[ModeDiagonalUpdate]:
    """Per-mode diagonal change of the field state after tracing out the qubit."""
    _check_p(p)
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    modes, nbar, _, weight = _mode_arrays(env, overlaps, coupling)
    n = np.arange(n_max + 1)
    updates = []
    for j, nb, w in zip(modes, nbar, weight):
        q = thermal_weights(nb, n_max)
        raising = np.zeros(n_max + 2)
        lowering = np.zeros(n_max + 2)
        depletion = np.zeros(n_max + 2)
        raising[1:] = w * p * q * (n + 1)
        lowering[:-2] = (w * (1.0 - p) * q * n)[1:]
        depletion[:-1] = -w * (n * (1.0 - p) + (n + 1) * p) * q
        updates.append(ModeDiagonalUpdate(j, raising, lowering, depletion))
    return updates
