"""Thermal (Gibbs) state of the cavity modes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cavity import CavitySpec, mode_frequency
from .errors import DomainError


def mean_occupation(omega: float, T_E: float) -> float:
    """Bose-Einstein occupation ``1 / (exp(omega / T_E) - 1)``."""
    if not omega > 0:
        raise DomainError(f"mode frequency must be positive, got {omega}")
    if not T_E > 0:
        raise DomainError(f"temperature must be positive, got {T_E}")
    ratio = omega / T_E
    if ratio > 709.0:  # expm1 overflows; the occupation is below 1e-307
        return 0.0
    return 1.0 / math.expm1(ratio)


def thermal_weight(n: int, nbar: float) -> float:
    """Geometric occupation probability ``nbar^n / (1 + nbar)^(n + 1)``."""
    if n < 0 or int(n) != n:
        raise DomainError(f"occupation number must be a non-negative integer, got {n}")
    if nbar < 0:
        raise DomainError(f"mean occupation must be non-negative, got {nbar}")
    if nbar == 0:
        return 1.0 if n == 0 else 0.0
    return math.exp(n * math.log(nbar) - (n + 1) * math.log1p(nbar))


def thermal_weights(nbar: float, n_max: int) -> np.ndarray:
    """Weights ``Q(0..n_max)`` (not renormalized)."""
    return np.array([thermal_weight(n, nbar) for n in range(n_max + 1)])


def truncated_mass(nbar: float, n_max: int) -> float:
    """Closed form of ``sum_{n <= n_max} Q(n)``."""
    return 1.0 - (nbar / (1.0 + nbar)) ** (n_max + 1)


def occupation_moments(nbar: float) -> tuple[float, float]:
    """First and second moments of the geometric law: ``(nbar, 2 nbar^2 + nbar)``."""
    if nbar < 0:
        raise DomainError(f"mean occupation must be non-negative, got {nbar}")
    return nbar, 2.0 * nbar * nbar + nbar


def truncation_cutoff(nbar: float, tail_tol: float) -> int:
    """Smallest ``n_max`` whose discarded tail ``(nbar/(1+nbar))^(n_max+1)`` is <= ``tail_tol``."""
    if not 0 < tail_tol < 1:
        raise DomainError(f"tail tolerance must lie in (0, 1), got {tail_tol}")
    if nbar < 0:
        raise DomainError(f"mean occupation must be non-negative, got {nbar}")
    if nbar == 0:
        return 0
    q = nbar / (1.0 + nbar)
    n = max(int(math.ceil(math.log(tail_tol) / math.log(q))) - 1, 0)
    # step off the float boundary in either direction
    while n > 0 and q ** n <= tail_tol:
        n -= 1
    while q ** (n + 1) > tail_tol:
        n += 1
    return n


@dataclass(frozen=True)
class ThermalEnvironment:
    """Cavity field in equilibrium at temperature ``T_E``.

    ``occupations[j - 1]`` holds ``nbar_j`` for the modes ``1..J`` of ``spec``.
    """

    temperature: float
    spec: CavitySpec
    occupations: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.temperature > 0:
            raise DomainError(f"temperature must be positive, got {self.temperature}")
        occ = np.array([mean_occupation(mode_frequency(j, self.spec), self.temperature)
                        for j in self.spec.modes])
        occ.setflags(write=False)
        object.__setattr__(self, "occupations", occ)

    def occupation(self, j: int) -> float:
        if 1 <= j <= self.spec.mode_count:
            return float(self.occupations[j - 1])
        return mean_occupation(mode_frequency(j, self.spec), self.temperature)

    def energy(self, modes=None) -> float:
        """Mean field energy ``sum_j omega_j nbar_j`` over ``modes`` (default all)."""
        modes = self.spec.modes if modes is None else modes
        return math.fsum(mode_frequency(j, self.spec) * self.occupation(j) for j in modes)
