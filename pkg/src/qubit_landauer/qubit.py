"""Two-level system density matrices.

Index 0 is the excited state |1>, index 1 the ground state |0>, so the
top-left entry is the excited population ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-12


@dataclass(frozen=True)
class QubitDensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"qubit density matrix must be 2x2, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def pure(cls, p: float) -> QubitDensityMatrix:
        """``|psi> = sqrt(1 - p)|0> + sqrt(p)|1>`` with real amplitudes."""
        _check_population(p)
        r = math.sqrt(p * (1.0 - p))
        return cls(np.array([[p, r], [r, 1.0 - p]]))

    @classmethod
    def mixed(cls, p: float) -> QubitDensityMatrix:
        """Incoherent mixture ``p|1><1| + (1 - p)|0><0|``."""
        _check_population(p)
        return cls(np.diag([p, 1.0 - p]))

    @property
    def excited_population(self) -> float:
        return float(self.matrix[0, 0].real)

    @property
    def coherence(self) -> complex:
        """``<1|rho|0>``."""
        return complex(self.matrix[0, 1])

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues."""
        return np.linalg.eigvalsh(self.matrix)

    def is_hermitian(self, tol: float = TRACE_TOL) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=tol, rtol=0))

    def validate(self, tol: float = POSITIVITY_TOL) -> QubitDensityMatrix:
        if not self.is_hermitian():
            raise DomainError("density matrix is not Hermitian")
        tr = np.trace(self.matrix)
        if abs(tr - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix trace is {tr}, expected 1")
        lo = self.eigenvalues()[0]
        if lo < -tol:
            raise DomainError(f"density matrix has negative eigenvalue {lo}")
        return self


def _check_population(p):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"population must lie in [0, 1], got {p}")
