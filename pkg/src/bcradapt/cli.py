"""Command-line interface.

Subcommands:
  evaluate   one-shot decision over a scenario, with a full score table
  sweep-a1   benefit-cost tradeoff sweep over the scaling multiplier x
  sweep-a2   desirability-risk tradeoff sweep over the desirability weight
  simulate   run the closed feedback loop for N cycles, logging JSONL
  validate   run the built-in anchor suite against the bundled scenarios

Exit codes: 0 on success, 1 on usage or I/O errors, 2 when validation fails.
The BCR_ADAPT_SEED environment variable overrides --seed when set. Commands
that write a report also render a companion PNG figure next to it unless
--no-plot is given.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .desirability import display_value
from .engine import decide
from .errors import BcrAdaptError
from .mape import EpisodeConfig, run_episode
from .plots import (
    figure_path_for,
    render_decision_figure,
    render_episode_figure,
    render_sweep_figure,
)
from .scenario_io import load_scenario, save_report
from .simulator import SimulationParams
from .tradeoff import SweepKind, SweepSpec, emit_sweep_csv, sweep
from .validation import run_anchor_suite


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"range must look like lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise _UsageError(f"range must be numeric, got {text!r}") from None
    return lo, hi, step


def build_parser() -> _Parser:
    parser = _Parser(prog="bcr-adapt", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--runs", type=int, default=10_000, help="simulation runs per estimate")
        p.add_argument("--seed", type=int, default=0, help="base random seed")
        p.add_argument("--confidence", type=float, default=0.95, help="CI confidence level")
        p.add_argument("--out", help="write the report to this file")
        p.add_argument("--no-plot", action="store_true", help="skip the companion figure")

    p_eval = sub.add_parser("evaluate", help="one-shot decision over a scenario")
    add_common(p_eval)

    p_a1 = sub.add_parser("sweep-a1", help="benefit-cost tradeoff sweep (multiplier x)")
    add_common(p_a1)
    p_a1.add_argument("--threshold", type=float, default=25.0, help="benefit scaling threshold T")
    p_a1.add_argument("--x-range", default="1:10:0.1", help="lo:hi:step for the multiplier")

    p_a2 = sub.add_parser("sweep-a2", help="desirability-risk tradeoff sweep (weight w)")
    add_common(p_a2)
    p_a2.add_argument("--w-range", default="0:1:0.01", help="lo:hi:step for the weight")

    p_sim = sub.add_parser("simulate", help="run the feedback loop for N cycles")
    add_common(p_sim)
    p_sim.add_argument("--cycles", type=int, required=True, help="number of MAPE cycles")
    p_sim.add_argument("--drift-sigma", type=float, default=0.0, help="branch drift step size")
    p_sim.add_argument(
        "--trigger",
        choices=("every-cycle", "on-goal-violation"),
        default="every-cycle",
        help="when the loop considers adapting",
    )

    sub.add_parser("validate", help="run the built-in anchor suite")
    return parser


def _params(args) -> SimulationParams:
    seed = args.seed
    env_seed = os.environ.get("BCR_ADAPT_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    return SimulationParams(runs=args.runs, seed=seed, confidence=args.confidence)


def _cmd_evaluate(args) -> int:
    spec = load_scenario(args.scenario)
    decision, analysis = decide(spec, params=_params(args))
    header = f"{'option':<28}{'EB':>10}{'EC':>10}{'ED':>10}{'ER':>10}{'EBCR':>10}"
    print(header)
    print("-" * len(header))
    for a in sorted(analysis.assessments, key=lambda a: a.option.id):
        marker = "  <- selected" if a.option.id == decision.selected else ""
        print(
            f"{a.option.id:<28}"
            f"{display_value(a.benefit.estimated_benefit):>10}"
            f"{display_value(a.cost.estimated_cost):>10}"
            f"{display_value(a.desirability.estimated_desirability):>10}"
            f"{display_value(a.risk.estimated_risk):>10}"
            f"{display_value(decision.scores[a.option.id]):>10}"
            f"{marker}"
        )
    for option_id in analysis.vetoed:
        print(f"{option_id:<28}  (vetoed)")
    if decision.no_adaptation:
        print(f"selected: {decision.selected} (no adaptation)")
    else:
        print(f"selected: {decision.selected}")
    if args.out:
        save_report(decision, args.out)
        if not args.no_plot:
            render_decision_figure(decision, figure_path_for(args.out))
    return 0


def _cmd_sweep(args, kind: SweepKind) -> int:
    spec = load_scenario(args.scenario)
    _decision, analysis = decide(spec, params=_params(args))
    if kind is SweepKind.BENEFIT_COST:
        lo, hi, step = _parse_range(args.x_range)
        options = tuple(
            (a.option.id, a.benefit.estimated_benefit, a.cost.estimated_cost)
            for a in analysis.assessments
        )
        spec_sweep = SweepSpec(
            kind=kind, lo=lo, hi=hi, step=step, options=options, threshold=args.threshold
        )
        xlabel, title = "benefit scaling multiplier x", "benefit-cost tradeoff"
    else:
        lo, hi, step = _parse_range(args.w_range)
        options = tuple(
            (a.option.id, a.desirability.estimated_desirability, a.risk.estimated_risk)
            for a in analysis.assessments
        )
        spec_sweep = SweepSpec(kind=kind, lo=lo, hi=hi, step=step, options=options)
        xlabel, title = "desirability weight", "desirability-risk tradeoff"

    report = sweep(spec_sweep)
    if args.out:
        rows = emit_sweep_csv(report, args.out)
        print(f"wrote {rows} rows to {args.out}")
        if not args.no_plot:
            figure = render_sweep_figure(report, figure_path_for(args.out), xlabel, title)
            print(f"wrote figure to {figure}")
    for id_a, id_b, param in report.crossovers:
        print(f"crossover {id_a}/{id_b} at {param:.6f}")
    if not report.crossovers:
        print("no crossovers in range")
    return 0


def _cmd_simulate(args) -> int:
    spec = load_scenario(args.scenario)
    episode = EpisodeConfig(
        cycles=args.cycles, drift_sigma=args.drift_sigma, trigger=args.trigger
    )
    log = run_episode(spec, episode, _params(args))
    if args.out:
        save_report(log, args.out, fmt="jsonl")
        print(f"wrote {len(log.records)} cycle records to {args.out}")
        if not args.no_plot:
            render_episode_figure(log, figure_path_for(args.out))
    else:
        sys.stdout.write(log.to_jsonl())
    return 0


def _cmd_validate() -> int:
    results = run_anchor_suite()
    failures = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {result.name} ({result.detail})")
        failures += not result.passed
    print(f"{len(results) - failures}/{len(results)} anchors passed")
    return 0 if failures == 0 else 2


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:  # --help lands here
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "evaluate":
            return _cmd_evaluate(args)
        if args.command == "sweep-a1":
            return _cmd_sweep(args, SweepKind.BENEFIT_COST)
        if args.command == "sweep-a2":
            return _cmd_sweep(args, SweepKind.DESIRABILITY_RISK)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_validate()
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BcrAdaptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main())
