"""Command-line entry point.

    qubit-landauer run --preset fig1-te1 --out results/
    qubit-landauer run --config my.json --set temperature=100 --out results/
    qubit-landauer verify
    qubit-landauer oracle --case x --lambda 0.02
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import checks, scenario
from .errors import DomainError, PerturbationBreakdownError, TruncationError

log = logging.getLogger("qubit_landauer")


def _resolve_config(args) -> scenario.ScenarioConfig:
    if args.config:
        config = scenario.loads_config(Path(args.config).read_text(encoding="utf-8"))
    elif args.preset:
        config = scenario.load_preset(args.preset)
    else:
        raise DomainError("give --config or --preset")
    for assignment in args.set or []:
        config = scenario.apply_override(config, assignment)
    return config.validate()


def cmd_run(args) -> int:
    config = _resolve_config(args)
    tables = scenario.run_scenario(config)
    for path in scenario.emit_outputs(tables, config, args.out):
        log.info("wrote %s", path)
    sys.stdout.write(scenario.summarize(tables, config))
    return 0 if scenario.all_bounds_hold(tables) else 1


def cmd_verify(args) -> int:
    sweep = checks.dissipative_sweep(args.samples)
    gaps, tols = checks.dephasing_sweep(args.samples)
    results = [
        checks.check_fig1_ordering(scenario.run_scenario(scenario.load_preset("fig1-te1"))["dissipative"], hot=False),
        checks.check_fig1_ordering(scenario.run_scenario(scenario.load_preset("fig1-te100"))["dissipative"], hot=True),
        checks.check_dissipative_landauer(sweep),
        checks.check_dephasing_landauer(gaps, tols),
        checks.check_nonnegativity(sweep),
        checks.check_mixed_vs_coherent(sweep),
        checks.check_recurrence(checks.recurrence_metrics()),
        checks.check_entropy(checks.entropy_metrics(args.samples)),
    ]
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def cmd_oracle(args) -> int:
    if args.case == "x":
        couplings = (args.coupling, args.coupling / 2, args.coupling / 4)
        ladder = checks.dissipative_ladder(couplings, n_max=args.cutoff)
        for c in ladder:
            print(f"lambda={c.coupling:g} T={c.duration:.6g} "
                  f"perturbative(dp, dd, dQ)=({c.perturbative[0]:.6e}, {c.perturbative[1]:.6e}, {c.perturbative[2]:.6e}) "
                  f"exact=({c.exact[0]:.6e}, {c.exact[1]:.6e}, {c.exact[2]:.6e}) "
                  f"oracle landauer gap={c.oracle_gap:.3e}")
        result = checks.check_dissipative_ladder(ladder)
        bounds = all(c.oracle_gap >= -1e-8 for c in ladder)
    else:
        comparison = checks.compare_dephasing(coupling=args.coupling, n_max=max(args.cutoff, 25))
        result = checks.check_dephasing_oracle(comparison)
        bounds = comparison.min_oracle_gap >= -1e-8
    print(result.line())
    return 0 if bounds and result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qubit-landauer",
                                     description="Qubit-cavity decoherence, heat and the Landauer bound.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="tabulate a scenario and write csv/manifest/summary")
    run.add_argument("--config", help="JSON scenario file")
    run.add_argument("--preset", choices=scenario.PRESETS)
    run.add_argument("--set", action="append", metavar="KEY=VALUE",
                     help="override a config entry (dotted keys for nested entries)")
    run.add_argument("--out", required=True, help="output directory")
    run.set_defaults(func=cmd_run)

    verify = sub.add_parser("verify", help="run the randomized property sweeps")
    verify.add_argument("--samples", type=int, default=10_000)
    verify.set_defaults(func=cmd_verify)

    orc = sub.add_parser("oracle", help="compare closed forms with exact Fock-space evolution")
    orc.add_argument("--case", choices=("x", "z"), required=True,
                     help="x: energy-exchange coupling, z: pure dephasing")
    orc.add_argument("--lambda", dest="coupling", type=float, required=True)
    orc.add_argument("--cutoff", type=int, default=15, help="Fock cutoff n_max")
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DomainError, PerturbationBreakdownError, TruncationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
