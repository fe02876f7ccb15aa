"""Dirichlet cavity modes and the time-overlap integrals of a static qubit.

Units are natural (c = hbar = k_B = 1). A massless scalar field in a box of
length ``L`` with Dirichlet walls has

    omega_j = j * pi / L,        u_j(x) = sin(j * pi * x / L) / sqrt(j * pi),

i.e. the usual 1/sqrt(omega_j L) amplitude.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Relative detuning below which the overlap integral uses its series form.
RESONANCE_EPS = 1e-12


class Boundary(enum.Enum):
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class CavitySpec:
    """Geometry of the cavity and the position of the (static) qubit.

    Parameters
    ----------
    length : float
        Cavity length ``L`` (> 0).
    qubit_position : float
        Qubit position ``x`` with ``0 < x < L``.
    mode_count : int
        Number of field modes ``J`` kept in multi-mode sums.
    boundary : Boundary
        Only Dirichlet walls are supported.
    """

    length: float
    qubit_position: float
    mode_count: int = 200
    boundary: Boundary = Boundary.DIRICHLET

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError(f"cavity length must be positive, got {self.length}")
        if not 0 < self.qubit_position < self.length:
            raise DomainError(
                f"qubit position {self.qubit_position} outside (0, {self.length})"
            )
        if int(self.mode_count) != self.mode_count or self.mode_count < 1:
            raise DomainError(f"mode_count must be a positive integer, got {self.mode_count}")
        if not isinstance(self.boundary, Boundary):
            object.__setattr__(self, "boundary", Boundary(self.boundary))

    @property
    def modes(self) -> np.ndarray:
        """Mode indices ``1..J``."""
        return np.arange(1, self.mode_count + 1)

    @property
    def recurrence_time(self) -> float:
        """Common period ``2L`` of every mode phase."""
        return 2.0 * self.length


@dataclass(frozen=True)
class ModeOverlap:
    """Values of ``I_-`` and ``I_+`` for one mode over the window ``[0, T]``."""

    mode: int
    I_minus: complex
    I_plus: complex
    duration: float


def _check_mode(j):
    if int(j) != j or j < 1:
        raise DomainError(f"mode index must be a positive integer, got {j}")


def mode_frequency(j: int, spec: CavitySpec) -> float:
    _check_mode(j)
    return j * math.pi / spec.length


def mode_frequencies(spec: CavitySpec, modes=None) -> np.ndarray:
    modes = spec.modes if modes is None else np.asarray(modes)
    return modes * math.pi / spec.length


def mode_function(j: int, x: float, spec: CavitySpec) -> float:
    """Mode amplitude ``u_j(x)`` at position ``x``."""
    _check_mode(j)
    if not 0 < x < spec.length:
        raise DomainError(f"position {x} outside (0, {spec.length})")
    return math.sin(j * math.pi * x / spec.length) / math.sqrt(j * math.pi)


def mode_functions(spec: CavitySpec, modes=None) -> np.ndarray:
    """Vectorized ``u_j`` at the qubit position."""
    modes = spec.modes if modes is None else np.asarray(modes)
    return np.sin(modes * math.pi * spec.qubit_position / spec.length) / np.sqrt(modes * math.pi)


def phase_window_integral(detuning: float, T: float, scale: float) -> complex:
    """Return ``int_0^T exp(i * detuning * t) dt``.

    ``scale`` sets the resonance threshold ``RESONANCE_EPS * scale``; inside
    it the two-term series ``T + i detuning T^2 / 2`` is used.
    """
    if abs(detuning) < RESONANCE_EPS * scale:
        return complex(T, detuning * T * T / 2.0)
    half = detuning * T / 2.0
    # (e^{i d T} - 1) / (i d) written without cancellation
    return 2.0 * math.sin(half) / detuning * complex(math.cos(half), math.sin(half))


def overlap_integral(sign: int, j: int, omega_qubit: float, T: float, spec: CavitySpec) -> complex:
    """Overlap ``I_{+/-, j}`` for a qubit at rest with a sharp switching window.

    ``sign`` is ``+1`` or ``-1`` and selects the ``+/- Omega`` phase.
    """
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if T < 0:
        raise DomainError(f"duration must be non-negative, got {T}")
    w = mode_frequency(j, spec)
    u = mode_function(j, spec.qubit_position, spec)
    detuning = sign * omega_qubit + w
    return u * phase_window_integral(detuning, T, max(abs(omega_qubit), w))


def mode_overlap(j: int, omega_qubit: float, T: float, spec: CavitySpec) -> ModeOverlap:
    return ModeOverlap(
        mode=int(j),
        I_minus=overlap_integral(-1, j, omega_qubit, T, spec),
        I_plus=overlap_integral(+1, j, omega_qubit, T, spec),
        duration=float(T),
    )


def mode_overlaps(omega_qubit: float, T: float, spec: CavitySpec, modes=None) -> list[ModeOverlap]:
    """Overlaps for ``modes`` (default: all ``J`` modes), ascending in ``j``."""
    modes = spec.modes if modes is None else sorted(int(j) for j in modes)
    return [mode_overlap(j, omega_qubit, T, spec) for j in modes]
