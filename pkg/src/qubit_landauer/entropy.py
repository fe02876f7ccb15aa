"""Von Neumann entropy of qubit states and the Landauer bound ``dQ >= T_E dS``.

Entropies are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, LandauerViolation, PerturbationBreakdownError
from .qubit import QubitDensityMatrix


def _xlogx(v: float) -> float:
    return v * math.log(v) if v > 0 else 0.0


def binary_entropy(q: float) -> float:
    """Entropy of the spectrum ``(q, 1 - q)``, with ``0 ln 0 = 0``."""
    if not -1e-12 <= q <= 1 + 1e-12:
        raise DomainError(f"probability {q} outside [0, 1]")
    q = min(max(q, 0.0), 1.0)
    return -_xlogx(q) - _xlogx(1.0 - q)


def von_neumann_entropy(rho: QubitDensityMatrix) -> float:
    rho.validate()
    # eigenvalues within -tol of zero are roundoff
    return math.fsum(-_xlogx(max(v, 0.0)) for v in rho.eigenvalues())


def eigenvalues_exact(p: float, delta_p: float, delta_d: float) -> tuple[float, float]:
    """Eigenvalues ``(p_+, p_-)`` of the perturbed pure state.

    The perturbed state has populations ``(p + dp, 1 - p - dp)`` and real
    coherence ``sqrt(p(1-p)) - dd``.
    """
    r = math.sqrt(p * (1.0 - p))
    disc = 1.0 + (8.0 * p - 4.0) * delta_p - 8.0 * r * delta_d + 4.0 * delta_d ** 2 + 4.0 * delta_p ** 2
    if disc < 0:
        raise PerturbationBreakdownError(
            f"negative discriminant {disc} for p={p}, dp={delta_p}, dd={delta_d}"
        )
    root = math.sqrt(disc)
    p_plus = 0.5 * (1.0 + root)
    # 1 - root cancels for a nearly pure state; divide the determinant instead
    if root > 0.5:
        det = (1.0 - 2.0 * p) * delta_p - delta_p ** 2 + 2.0 * r * delta_d - delta_d ** 2
        p_minus = det / p_plus
    else:
        p_minus = 0.5 * (1.0 - root)
    if p_minus < -1e-9:
        raise PerturbationBreakdownError(
            f"negative eigenvalue {p_minus} for p={p}, dp={delta_p}, dd={delta_d}"
        )
    return p_plus, p_minus


def eigenvalues_first_order(p: float, delta_p: float, delta_d: float) -> tuple[float, float]:
    """Eigenvalues to first order in ``(dp, dd)``."""
    p_minus = (1.0 - 2.0 * p) * delta_p + 2.0 * math.sqrt(p * (1.0 - p)) * delta_d
    return 1.0 - p_minus, p_minus


def delta_S_mixed(p: float, delta_p: float) -> float:
    """First-order entropy change ``S(rho) - S(rho')`` of the diagonal process
    ``diag(p, 1-p) -> diag(p + dp, 1 - p - dp)``.

    At ``p`` in ``{0, 1}`` the logarithm diverges; those endpoints use the
    exact entropy of the final state, ``-(dp ln dp) + dp`` to leading order.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"population must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return -binary_entropy(abs(delta_p))
    return -math.log((1.0 - p) / p) * delta_p


def delta_S_mixed_exact(p: float, delta_p: float) -> float:
    """Exact ``S(diag(p)) - S(diag(p + dp))`` for the diagonal process."""
    return binary_entropy(p) - binary_entropy(p + delta_p)


def delta_S_coherent(p: float, delta_p: float, delta_d: float, exact: bool = False) -> float:
    """Entropy change of the initially pure state (its initial entropy is zero).

    By default the eigenvalues are taken to first order, which keeps ``p_-``
    non-negative whenever ``dp`` and ``dd`` come from the second-order
    solution; ``exact=True`` diagonalizes the perturbed matrix instead.
    """
    _, p_minus = (eigenvalues_exact if exact else eigenvalues_first_order)(p, delta_p, delta_d)
    return -binary_entropy(p_minus)


@dataclass(frozen=True)
class LandauerReport:
    heat: float
    delta_S: float
    temperature: float
    gap: float
    holds: bool

    @property
    def tolerance(self) -> float:
        return bound_tolerance(self.heat)

    def raise_if_violated(self, **context):
        if not self.holds:
            details = ", ".join(f"{k}={v!r}" for k, v in sorted(context.items()))
            raise LandauerViolation(
                f"dQ={self.heat!r} < T_E*dS={self.temperature * self.delta_S!r} "
                f"(gap {self.gap!r}, T_E={self.temperature!r}, dS={self.delta_S!r}"
                + (f"; {details})" if details else ")")
            )
        return self


def bound_tolerance(heat: float) -> float:
    return 1e-10 * max(1.0, abs(heat))


def landauer_check(heat: float, delta_S: float, T_E: float) -> LandauerReport:
    if not T_E > 0:
        raise DomainError(f"temperature must be positive, got {T_E}")
    gap = heat - T_E * delta_S
    return LandauerReport(heat, delta_S, T_E, gap, bool(gap >= -bound_tolerance(heat)))
