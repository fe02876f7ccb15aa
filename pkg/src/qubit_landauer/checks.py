"""Property sweeps and oracle comparisons shared by the CLI and the test suite.

Each check returns a :class:`CheckResult` holding the measured metric next to
the tolerance it is judged against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import dephasing, dissipative, entropy, oracle
from .cavity import CavitySpec, mode_frequency, mode_function, mode_overlap
from .qubit import QubitDensityMatrix
from .scenario import ResultTable, load_preset
from .thermal import ThermalEnvironment, truncation_cutoff


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


# -- energy-exchange sweep ---------------------------------------------------

@dataclass(frozen=True)
class DissipativeSweep:
    p: np.ndarray
    temperature: np.ndarray
    nbar: np.ndarray
    strength: np.ndarray  # lambda^2 |I_-|^2
    delta_p: np.ndarray
    delta_d: np.ndarray
    p_minus: np.ndarray
    heat: np.ndarray
    dS_coherent: np.ndarray
    dS_mixed_exact: np.ndarray
    gap: np.ndarray
    tolerance: np.ndarray


def dissipative_sweep(samples: int = 10_000, seed: int = 20221, max_strength: float = 0.05) -> DissipativeSweep:
    """Random single-mode configurations inside the perturbative regime.

    Draws cavity geometry, mode, detuning, duration, ``p`` and ``T_E``, then
    fixes the coupling so that ``lambda^2 (nbar + 1) |I_-|^2`` is uniform on
    ``[0, max_strength]``. About 2% of draws each pin ``p`` to 0 and to 1.
    """
    rng = np.random.default_rng(seed)
    cols = {k: np.empty(samples) for k in DissipativeSweep.__dataclass_fields__}
    k = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", dissipative.PerturbativeWarning)
        while k < samples:
            L = rng.uniform(0.5, 3.0)
            spec = CavitySpec(L, rng.uniform(0.02, 0.98) * L, 1)
            j = int(rng.integers(1, 41))
            omega = mode_frequency(j, spec) * (1.0 + rng.uniform(-0.05, 0.05) * rng.integers(0, 2))
            T = rng.uniform(0.1, 60.0)
            T_E = rng.uniform(0.1, 100.0)
            u = rng.uniform()
            p = 0.0 if u < 0.02 else 1.0 if u < 0.04 else rng.uniform()
            ov = mode_overlap(j, omega, T, spec)
            if abs(ov.I_minus) < 1e-9:
                continue
            env = ThermalEnvironment(T_E, spec)
            nbar = env.occupation(j)
            strength = rng.uniform(0.0, max_strength) / (nbar + 1.0)
            coupling = math.sqrt(strength) / abs(ov.I_minus)
            out = dissipative.solve(p, env, [ov], coupling)
            _, p_minus = entropy.eigenvalues_first_order(p, out.delta_p, out.delta_d)
            ds = entropy.delta_S_coherent(p, out.delta_p, out.delta_d)
            rep = entropy.landauer_check(out.heat, ds, T_E)
            values = dict(p=p, temperature=T_E, nbar=nbar, strength=strength, delta_p=out.delta_p,
                          delta_d=out.delta_d, p_minus=p_minus, heat=out.heat, dS_coherent=ds,
                          dS_mixed_exact=entropy.delta_S_mixed_exact(p, out.delta_p),
                          gap=rep.gap, tolerance=rep.tolerance)
            for name, v in values.items():
                cols[name][k] = v
            k += 1
    return DissipativeSweep(**cols)


def check_dissipative_landauer(sweep: DissipativeSweep) -> CheckResult:
    worst = float(np.min(sweep.gap + sweep.tolerance))
    bad = int(np.sum(sweep.gap < -sweep.tolerance))
    return CheckResult("landauer bound, random energy-exchange runs", bad == 0,
                       f"{bad} violations in {sweep.gap.size} samples (min gap+tol {worst:.3e})")


def check_nonnegativity(sweep: DissipativeSweep, tol: float = 1e-14) -> CheckResult:
    bad = int(np.sum(sweep.p_minus < -tol) + np.sum(sweep.delta_d < -tol))
    return CheckResult("p_minus >= 0 and delta_d >= 0", bad == 0,
                       f"{bad} violations; min p_- {sweep.p_minus.min():.3e}, "
                       f"min delta_d {sweep.delta_d.min():.3e}")


def check_mixed_vs_coherent(sweep: DissipativeSweep, limit_tol: float = 1e-6) -> CheckResult:
    """Coherent entropy change never exceeds the mixed one; they meet as ``p -> 0``."""
    mask = sweep.delta_d > 0
    excess = sweep.dS_coherent[mask] - sweep.dS_mixed_exact[mask]
    bad = int(np.sum(excess > 1e-14))
    limit = mixed_coherent_limit_gap(1e-8)
    ok = bad == 0 and limit < limit_tol
    return CheckResult("dS_coherent <= dS_mixed, equal as p -> 0", ok,
                       f"{bad} violations in {int(mask.sum())} samples "
                       f"(max excess {excess.max(initial=-np.inf):.3e}); gap at p=1e-8: {limit:.3e}")


def mixed_coherent_limit_gap(p: float, nbar: float = 1.0, strength: float = 0.01) -> float:
    dp = strength * (nbar * (1 - p) - (nbar + 1) * p)
    dd = strength * math.sqrt(p * (1 - p)) * (nbar + 0.5)
    return abs(entropy.delta_S_mixed_exact(p, dp) - entropy.delta_S_coherent(p, dp, dd))


# -- dephasing sweep -----------------------------------------------------------

def dephasing_sweep(samples: int = 10_000, seed: int = 20222) -> tuple[np.ndarray, np.ndarray]:
    """Landauer gaps and tolerances for random multi-mode dephasing runs."""
    rng = np.random.default_rng(seed)
    gaps = np.empty(samples)
    tols = np.empty(samples)
    for k in range(samples):
        L = rng.uniform(0.5, 3.0)
        spec = CavitySpec(L, rng.uniform(0.02, 0.98) * L, int(rng.integers(1, 65)))
        env = ThermalEnvironment(rng.uniform(0.1, 100.0), spec)
        coupling = rng.uniform(0.0, 1.0)
        T = rng.uniform(0.0, 3.0 * L)
        p = rng.uniform()
        chi = float(dephasing.suppression_factor(T, env, coupling))
        heat = float(dephasing.heat_dephasing(T, spec, coupling))
        rep = entropy.landauer_check(heat, float(dephasing.coherent_entropy_change(p, chi)), env.temperature)
        gaps[k], tols[k] = rep.gap, rep.tolerance
    return gaps, tols


def check_dephasing_landauer(gaps, tols) -> CheckResult:
    bad = int(np.sum(gaps < -tols))
    return CheckResult("landauer bound, random dephasing runs", bad == 0,
                       f"{bad} violations in {gaps.size} samples (min gap {gaps.min():.3e})")


# -- recurrences ---------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceMetrics:
    chi_at_period: float
    heat_at_period_ratio: float
    max_shift_difference: float


def recurrence_metrics(mode_count: int = 200, grid_points: int = 100) -> RecurrenceMetrics:
    cfg = load_preset("fig2")
    spec = CavitySpec(cfg.length, cfg.position, mode_count)
    env = ThermalEnvironment(cfg.temperature, spec)
    period = spec.recurrence_time
    grid = np.linspace(0.0, period, grid_points, endpoint=False)
    chi = dephasing.suppression_factor(grid, env, cfg.coupling)
    chi_shift = dephasing.suppression_factor(grid + period, env, cfg.coupling)
    heat = dephasing.heat_dephasing(grid, spec, cfg.coupling)
    return RecurrenceMetrics(
        chi_at_period=float(dephasing.suppression_factor(period, env, cfg.coupling)),
        heat_at_period_ratio=float(dephasing.heat_dephasing(period, spec, cfg.coupling) / heat.max()),
        max_shift_difference=float(np.max(np.abs(chi_shift - chi))),
    )


def check_recurrence(m: RecurrenceMetrics, tol: float = 1e-9) -> CheckResult:
    ok = m.chi_at_period >= 1 - tol and m.heat_at_period_ratio <= tol and m.max_shift_difference <= tol
    return CheckResult("Poincare recurrence at T = 2L", ok,
                       f"1-chi(2L) {1 - m.chi_at_period:.2e}, dQ(2L)/dQmax {m.heat_at_period_ratio:.2e}, "
                       f"max|chi(T+2L)-chi(T)| {m.max_shift_difference:.2e}")


# -- entropy machinery -----------------------------------------------------------

@dataclass(frozen=True)
class EntropyMetrics:
    max_eigen_error: float
    min_convergence_ratio: float
    mixed_entropy_error: float
    pure_entropy_error: float


def entropy_metrics(samples: int = 10_000, seed: int = 20223) -> EntropyMetrics:
    rng = np.random.default_rng(seed)
    worst = 0.0
    k = 0
    while k < samples:
        p = rng.uniform()
        dp, dd = rng.uniform(-0.05, 0.05, size=2)
        r = math.sqrt(p * (1 - p))
        m = np.array([[p + dp, r - dd], [r - dd, 1 - p - dp]])
        ref = np.linalg.eigvalsh(m)
        if ref[0] < 0 or ref[1] > 1:
            continue
        p_plus, p_minus = entropy.eigenvalues_exact(p, dp, dd)
        worst = max(worst, abs(p_plus - ref[1]), abs(p_minus - ref[0]))
        k += 1
    ratios = []
    for _ in range(50):
        p = rng.uniform(0.1, 0.9)
        nbar = rng.uniform(0.0, 3.0)
        errs = []
        for s in 0.02 / 4.0 ** np.arange(4):
            dp = s * (nbar * (1 - p) - (nbar + 1) * p)
            dd = s * math.sqrt(p * (1 - p)) * (nbar + 0.5)
            errs.append(abs(entropy.eigenvalues_first_order(p, dp, dd)[1]
                            - entropy.eigenvalues_exact(p, dp, dd)[1]))
        ratios.extend(a / b for a, b in zip(errs, errs[1:]))
    mixed = entropy.von_neumann_entropy(QubitDensityMatrix.mixed(0.5))
    pure = entropy.von_neumann_entropy(QubitDensityMatrix.pure(0.3))
    return EntropyMetrics(worst, min(ratios), abs(mixed - math.log(2)), abs(pure))


def check_entropy(m: EntropyMetrics) -> CheckResult:
    ok = (m.max_eigen_error <= 1e-12 and m.min_convergence_ratio >= 8
          and m.mixed_entropy_error <= 1e-14 and m.pure_entropy_error <= 1e-14)
    return CheckResult("entropy machinery", ok,
                       f"eig err {m.max_eigen_error:.2e}, min first-order ratio "
                       f"{m.min_convergence_ratio:.2f}, |S(I/2)-ln2| {m.mixed_entropy_error:.1e}, "
                       f"S(pure) {m.pure_entropy_error:.1e}")


# -- figure-1 orderings ------------------------------------------------------------

def check_fig1_ordering(table: ResultTable, hot: bool) -> CheckResult:
    """Signs and the ordering ``dQ/T_E >= dS_mixed >= dS_coherent`` for ``T > 0``."""
    t = table.column("T")
    sel = t > 0
    q = table.column("heat_over_te")[sel]
    mix = table.column("dS_mixed")[sel]
    coh = table.column("dS_coherent")[sel]
    if hot:
        signs = bool(np.all(q <= 0) and np.all(mix <= 0) and np.all(coh <= 0))
    else:
        signs = bool(np.all(q > 0) and np.all(mix > 0) and np.all(coh < 0))
    order = bool(np.all(q >= mix) and np.all(mix >= coh))
    name = "fig. 1 T_E=100 signs and ordering" if hot else "fig. 1 T_E=1 signs and ordering"
    return CheckResult(name, signs and order, f"signs {'ok' if signs else 'WRONG'}, "
                       f"ordering {'ok' if order else 'WRONG'} over {int(sel.sum())} points")


# -- oracle comparisons ------------------------------------------------------------

def counter_rotating_node(target: float, omega_qubit: float) -> float:
    """Multiple of ``pi / Omega`` closest to ``target``.

    There the single-mode ``I_+`` vanishes, so the dropped counter-rotating
    terms leave no ``O(lambda^2)`` residue and the remaining error is the
    ``O(lambda^4)`` truncation.
    """
    step = math.pi / omega_qubit
    return max(1, round(target / step)) * step


@dataclass(frozen=True)
class DissipativeComparison:
    coupling: float
    duration: float
    perturbative: tuple  # (delta_p, delta_d, heat)
    exact: tuple
    exact_mixed: tuple  # (delta_p, heat) from the diagonal initial state
    oracle_gap: float

    @property
    def errors(self) -> tuple:
        return tuple(abs(a - b) for a, b in zip(self.perturbative, self.exact))

    @property
    def relative_errors(self) -> tuple:
        return tuple(abs(a - b) / abs(b) for a, b in zip(self.perturbative, self.exact))


def compare_dissipative(coupling: float, duration: float, p: float = 0.2, temperature: float = 1.0,
                        mode: int = 20, n_max: int = 15, length: float = 1.234,
                        position: float = 0.52345) -> DissipativeComparison:
    """Second-order results against exact single-mode evolution at resonance."""
    spec = CavitySpec(length, position, mode)
    env = ThermalEnvironment(temperature, spec)
    omega = mode_frequency(mode, spec)
    out = dissipative.solve(p, env, [mode_overlap(mode, omega, duration, spec)], coupling)
    ham = oracle.build_hamiltonian("x", coupling, spec, [mode], [n_max], omega)
    exact = {}
    for coherent in (True, False):
        start = oracle.build_joint_initial(p, env, [mode], [n_max], coherent=coherent)
        final = oracle.evolve(start, ham, duration)
        rho = oracle.interaction_picture_qubit(oracle.reduce_system(final), omega, duration)
        heat = oracle.environment_energy(final, spec) - oracle.environment_energy(start, spec)
        exact[coherent] = (rho, heat)
    rho, heat = exact[True]
    rho_mixed, heat_mixed = exact[False]
    ds = -entropy.von_neumann_entropy(rho)
    return DissipativeComparison(
        coupling=coupling,
        duration=duration,
        perturbative=(out.delta_p, out.delta_d, out.heat),
        exact=(rho.excited_population - p, math.sqrt(p * (1 - p)) - abs(rho.coherence), heat),
        exact_mixed=(rho_mixed.excited_population - p, heat_mixed),
        oracle_gap=heat - temperature * ds,
    )


def dissipative_ladder(couplings=(0.02, 0.01, 0.005), strength: float = 0.01, **kwargs):
    """Comparisons at a fixed duration where ``couplings[0]^2 T^2 u^2 ~= strength``."""
    length = kwargs.get("length", 1.234)
    position = kwargs.get("position", 0.52345)
    mode = kwargs.get("mode", 20)
    spec = CavitySpec(length, position, mode)
    u = mode_function(mode, position, spec)
    T = counter_rotating_node(math.sqrt(strength) / (couplings[0] * abs(u)), mode_frequency(mode, spec))
    return [compare_dissipative(c, T, **kwargs) for c in couplings]


def check_dissipative_ladder(ladder, rel_tol: float = 0.05, min_ratio: float = 8.0) -> CheckResult:
    first = ladder[0].relative_errors
    ratios = [tuple(a / b for a, b in zip(x.errors, y.errors)) for x, y in zip(ladder, ladder[1:])]
    ok = max(first) <= rel_tol and all(min(r) >= min_ratio for r in ratios)
    shown = "; ".join("(" + ", ".join(f"{v:.2f}" for v in r) + ")" for r in ratios)
    return CheckResult("perturbative vs exact energy exchange", ok,
                       f"rel. err at lambda={ladder[0].coupling}: "
                       + ", ".join(f"{v:.2e}" for v in first)
                       + f"; shrink ratios (dp, dd, dQ) {shown}")


@dataclass(frozen=True)
class DephasingComparison:
    population_error: float
    coherence_error: float
    heat_error: float
    min_oracle_gap: float


def compare_dephasing(coupling: float = 0.5, nbar: float = 1.0, n_max: int = 40, p: float = 0.2,
                      mode: int = 1, length: float = 1.234, position: float = 0.52345,
                      times=None) -> DephasingComparison:
    """Exact single-mode joint evolution against the closed forms."""
    spec = CavitySpec(length, position, mode)
    omega = mode_frequency(mode, spec)
    env = ThermalEnvironment(omega / math.log1p(1.0 / nbar), spec)
    times = np.linspace(0.0, 2.0 * length, 25) if times is None else times
    ham = oracle.build_hamiltonian("z", coupling, spec, [mode], [n_max], omega)
    start = oracle.build_joint_initial(p, env, [mode], [n_max])
    e0 = oracle.environment_energy(start, spec)
    pop = coh = en = 0.0
    gap = math.inf
    for T in times:
        final = oracle.evolve(start, ham, T)
        rho = oracle.reduce_system(final)
        chi = float(dephasing.suppression_factor(T, env, coupling, [mode]))
        heat = oracle.environment_energy(final, spec) - e0
        pop = max(pop, abs(rho.excited_population - p), abs(rho.matrix[1, 1].real - (1 - p)))
        coh = max(coh, abs(abs(rho.coherence) - math.sqrt(p * (1 - p)) * chi))
        en = max(en, abs(heat - float(dephasing.heat_dephasing(T, spec, coupling, [mode]))))
        gap = min(gap, heat + env.temperature * entropy.von_neumann_entropy(rho))
    return DephasingComparison(pop, coh, en, gap)


def check_dephasing_oracle(c: DephasingComparison) -> CheckResult:
    ok = (c.population_error <= 1e-10 and c.coherence_error <= 1e-6 and c.heat_error <= 1e-6
          and c.min_oracle_gap >= -1e-8)
    return CheckResult("exact dephasing vs closed forms", ok,
                       f"population err {c.population_error:.1e}, coherence err {c.coherence_error:.1e}, "
                       f"heat err {c.heat_error:.1e}, min oracle Landauer gap {c.min_oracle_gap:.2e}")
