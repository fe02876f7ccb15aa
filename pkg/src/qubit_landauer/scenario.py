"""Configuration-driven runs that tabulate heat, entropy and the Landauer gap
over a grid of interaction durations."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__, dephasing, dissipative, entropy, oracle
from .cavity import CavitySpec, mode_frequency, mode_overlap, mode_overlaps
from .errors import DomainError, PerturbationBreakdownError, TruncationError
from .qubit import QubitDensityMatrix
from .thermal import ThermalEnvironment

CASES = ("dissipative", "dephasing", "both")
PRESETS = ("fig1-te1", "fig1-te100", "fig2", "fig3")


@dataclass
class OracleConfig:
    enabled: bool = False
    cutoff: int = 15


@dataclass
class ScenarioConfig:
    name: str = "custom"
    case: str = "dissipative"
    length: float = 1.234
    position: float = 0.52345
    p: float = 0.2
    temperature: float = 1.0
    coupling: float = 0.01
    #: qubit gap as a mode index (``Omega = omega_j``); ignored when ``omega`` is set
    resonant_mode: int | None = 20
    omega: float | None = None
    single_mode: bool = True
    mode_count: int = 200
    t_start: float = 0.0
    t_stop: float = 50.0
    points: int = 501
    oracle: OracleConfig = field(default_factory=OracleConfig)

    def __post_init__(self):
        if isinstance(self.oracle, dict):
            self.oracle = OracleConfig(**self.oracle)

    def validate(self) -> ScenarioConfig:
        if self.case not in CASES:
            raise DomainError(f"case must be one of {CASES}, got {self.case!r}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")
        if not self.temperature > 0:
            raise DomainError(f"temperature must be positive, got {self.temperature}")
        if self.omega is None and self.resonant_mode is None:
            raise DomainError("set either omega or resonant_mode")
        if self.omega is not None and not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if self.points < 0:
            raise DomainError(f"points must be non-negative, got {self.points}")
        if self.t_start < 0 or (self.points > 1 and not self.t_stop > self.t_start):
            raise DomainError("time grid must be non-negative and strictly increasing")
        self.cavity()
        return self

    def cavity(self) -> CavitySpec:
        return CavitySpec(self.length, self.position, self.mode_count)

    def qubit_gap(self) -> float:
        if self.omega is not None:
            return float(self.omega)
        return mode_frequency(self.resonant_mode, self.cavity())

    def selected_modes(self) -> list[int]:
        """Modes entering the energy-exchange sums."""
        spec = self.cavity()
        if not self.single_mode:
            return list(range(1, spec.mode_count + 1))
        if self.omega is None:
            return [self.resonant_mode]
        return [max(1, round(self.omega * spec.length / math.pi))]

    def times(self) -> np.ndarray:
        if self.points == 0:
            return np.empty(0)
        return np.linspace(self.t_start, self.t_stop, self.points)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> ScenarioConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def dumps_config(config: ScenarioConfig) -> str:
    return json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n"


def loads_config(text: str) -> ScenarioConfig:
    return ScenarioConfig.from_dict(json.loads(text))


def load_preset(name: str) -> ScenarioConfig:
    if name not in PRESETS:
        raise DomainError(f"unknown preset {name!r}; choose from {PRESETS}")
    text = resources.files(__package__).joinpath("presets", f"{name}.json").read_text()
    return loads_config(text)


def apply_override(config: ScenarioConfig, assignment: str) -> ScenarioConfig:
    """Apply ``key=value`` (dotted keys reach nested tables, values parse as JSON)."""
    key, sep, raw = assignment.partition("=")
    if not sep:
        raise DomainError(f"override {assignment!r} is not of the form key=value")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    data = config.to_dict()
    node = data
    *parents, leaf = key.strip().split(".")
    for part in parents:
        if not isinstance(node.get(part), dict):
            raise DomainError(f"unknown config key {key!r}")
        node = node[part]
    if leaf not in node:
        raise DomainError(f"unknown config key {key!r}")
    node[leaf] = value
    return ScenarioConfig.from_dict(data)


@dataclass
class ResultTable:
    case: str
    columns: list
    data: dict

    def __len__(self):
        return len(self.data[self.columns[0]]) if self.columns else 0

    def column(self, name: str) -> np.ndarray:
        return np.asarray(self.data[name])


def _dissipative_table(config: ScenarioConfig) -> ResultTable:
    spec = config.cavity()
    env = ThermalEnvironment(config.temperature, spec)
    gap_omega = config.qubit_gap()
    modes = config.selected_modes()
    p, T_E, lam = config.p, config.temperature, config.coupling
    cols = ["T", "delta_p", "delta_d", "p_minus", "heat", "heat_over_te",
            "dS_coherent", "dS_mixed", "dS_mixed_exact", "gap", "gap_mixed", "bound_holds"]
    use_oracle = config.oracle.enabled
    if use_oracle:
        if len(modes) != 1:
            raise DomainError("the oracle comparison needs single_mode = true")
        cols += ["oracle_delta_p", "oracle_delta_d", "oracle_heat"]
        cut = [config.oracle.cutoff]
        ham = oracle.build_hamiltonian("x", lam, spec, modes, cut, gap_omega)
        start = oracle.build_joint_initial(p, env, modes, cut)
        e0 = oracle.environment_energy(start, spec)
    rows = {c: [] for c in cols}
    for T in config.times():
        try:
            out = dissipative.solve(p, env, mode_overlaps(gap_omega, T, spec, modes), lam)
            dissipative.evolved_qubit_state(QubitDensityMatrix.pure(p), out.delta_p, out.delta_d)
        except PerturbationBreakdownError as exc:
            raise PerturbationBreakdownError(f"at T={T!r}: {exc}") from exc
        _, p_minus = entropy.eigenvalues_first_order(p, out.delta_p, out.delta_d)
        ds_coh = entropy.delta_S_coherent(p, out.delta_p, out.delta_d)
        ds_mix = entropy.delta_S_mixed(p, out.delta_p)
        rep = entropy.landauer_check(out.heat, ds_coh, T_E)
        rep_mix = entropy.landauer_check(out.heat, ds_mix, T_E)
        row = dict(T=T, delta_p=out.delta_p, delta_d=out.delta_d, p_minus=p_minus, heat=out.heat,
                   heat_over_te=out.heat / T_E, dS_coherent=ds_coh, dS_mixed=ds_mix,
                   dS_mixed_exact=entropy.delta_S_mixed_exact(p, out.delta_p),
                   gap=rep.gap, gap_mixed=rep_mix.gap, bound_holds=rep.holds and rep_mix.holds)
        if use_oracle:
            try:
                state = oracle.evolve(start, ham, T)
            except TruncationError as exc:
                raise TruncationError(f"at T={T!r}: {exc}") from exc
            rho = oracle.interaction_picture_qubit(oracle.reduce_system(state), gap_omega, T)
            row.update(oracle_delta_p=rho.excited_population - p,
                       oracle_delta_d=math.sqrt(p * (1 - p)) - abs(rho.coherence),
                       oracle_heat=oracle.environment_energy(state, spec) - e0)
        for c in cols:
            rows[c].append(row[c])
    return ResultTable("dissipative", cols, rows)


def _oracle_dephasing(config, env, times):
    """Per-mode exact coherence ratios and heat; the modes do not couple."""
    spec = env.spec
    chi = np.ones(times.size)
    heat = np.zeros(times.size)
    cut = [config.oracle.cutoff]
    for j in spec.modes:
        ham = oracle.build_hamiltonian("z", config.coupling, spec, [j], cut, config.qubit_gap())
        start = oracle.build_joint_initial(0.5, env, [j], cut)
        e0 = oracle.environment_energy(start, spec)
        for k, T in enumerate(times):
            state = oracle.evolve(start, ham, T)
            chi[k] *= abs(oracle.reduce_system(state).coherence) / 0.5
            heat[k] += oracle.environment_energy(state, spec) - e0
    return chi, heat


def _dephasing_table(config: ScenarioConfig) -> ResultTable:
    spec = config.cavity()
    env = ThermalEnvironment(config.temperature, spec)
    p, T_E, lam = config.p, config.temperature, config.coupling
    times = config.times()
    chi = dephasing.suppression_factor(times, env, lam)
    phase = dephasing.dynamical_phase(times, spec, lam)
    heat = dephasing.heat_dephasing(times, spec, lam)
    ds_coh = dephasing.coherent_entropy_change(p, chi)
    rows = {"T": times, "chi": chi, "phase": phase, "heat": heat, "heat_over_te": heat / T_E,
            "dS_coherent": ds_coh, "dS_mixed": np.zeros(times.size)}
    reports = [entropy.landauer_check(q, s, T_E) for q, s in zip(heat, ds_coh)]
    rows["gap"] = np.array([r.gap for r in reports])
    rows["bound_holds"] = [r.holds for r in reports]
    cols = list(rows)
    if config.oracle.enabled:
        rows["oracle_chi"], rows["oracle_heat"] = _oracle_dephasing(config, env, times)
        cols += ["oracle_chi", "oracle_heat"]
    return ResultTable("dephasing", cols, {c: list(rows[c]) for c in cols})


def run_scenario(config: ScenarioConfig) -> dict[str, ResultTable]:
    """One table per requested case, keyed by case name."""
    config.validate()
    cases = ("dissipative", "dephasing") if config.case == "both" else (config.case,)
    builders = {"dissipative": _dissipative_table, "dephasing": _dephasing_table}
    return {case: builders[case](config) for case in cases}


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return format(float(value) + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0


def table_to_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for k in range(len(table)):
        writer.writerow([_fmt(table.data[c][k]) for c in table.columns])
    return buf.getvalue()


def summarize(tables: dict[str, ResultTable], config: ScenarioConfig) -> str:
    lines = [f"scenario: {config.name}", f"version: {__version__}"]
    for case, table in tables.items():
        lines.append(f"[{case}] rows: {len(table)}")
        if len(table):
            gap = table.column("gap")
            lines.append(f"[{case}] landauer gap min: {_fmt(gap.min())}")
            lines.append(f"[{case}] landauer gap max: {_fmt(gap.max())}")
        lines.append(f"[{case}] bound holds: {_fmt(all_bounds_hold({case: table}))}")
    return "\n".join(lines) + "\n"


def all_bounds_hold(tables: dict[str, ResultTable]) -> bool:
    return all(bool(h) for t in tables.values() for h in t.data["bound_holds"])


def emit_outputs(tables: dict[str, ResultTable], config: ScenarioConfig, out_dir) -> list[Path]:
    """Write ``<case>.csv``, ``manifest.json`` and ``summary.txt``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    manifest = {"config": config.to_dict(), "package": __package__, "version": __version__,
                "files": sorted(f"{c}.csv" for c in tables)}
    written = []
    payloads = {f"{case}.csv": table_to_csv(t) for case, t in tables.items()}
    payloads["manifest.json"] = json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    payloads["summary.txt"] = summarize(tables, config)
    for name, text in payloads.items():
        path = out / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written
