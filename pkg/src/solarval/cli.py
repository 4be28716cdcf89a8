"""Command-line entry point.

Subcommands::

    validate     audit the dataset, print findings
    curves       write the supply and value-added curve tables
    solve        solve a single scenario and print the plan
    sweep        run the full weight sweep and write report files
    export-mps   write one scenario's LP in MPS format
    plot         run the sweep and write the SVG figures

Exit codes: 0 success, 1 validation/configuration failure, 2 infeasible
model.  Flags beat the ``SOLARVAL_DATA`` environment variable, which beats
the config file.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import ScenarioConfig, load_config
from .datagen import ensure_dataset
from .dataio import load_dataset, validate_data
from .expansion import CEInfeasible, CEProblem, build_lp, solve_model
from .mps import export_mps
from .siting import ZONING_PRESETS
from .svgplots import emit_plots
from .sweep import DataValidationError, run_sweep


class _Parser(argparse.ArgumentParser):
    """Argument errors are configuration failures, not infeasibility."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(1) if False else sys.exit(
            self.exit(1, f"{self.prog}: error: {message}\n")
        )

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise SystemExit(1 if status else 0)


def _weights_arg(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"weights must be comma-separated numbers, got {text!r}"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="solarval",
        description="County-level solar cost and value-added analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--config", type=Path, default=None,
                       help="TOML run-configuration file")
        p.add_argument("--data", type=Path, default=None,
                       help="dataset directory (generated there if absent)")
        p.add_argument("--seed", type=int, default=None,
                       help="synthetic dataset seed")
        p.add_argument("--preset", choices=ZONING_PRESETS, default=None,
                       help="zoning preset for land screening")
        if out:
            p.add_argument("--out", type=Path, default=None,
                           help="output directory")

    common(sub.add_parser("validate", help="audit the dataset"), out=False)
    common(sub.add_parser("curves", help="write curve tables"))

    p_solve = sub.add_parser("solve", help="solve one scenario")
    common(p_solve, out=False)
    p_solve.add_argument("--weight", type=float, default=1.0,
                         help="cost weight in [0, 1]; weights below 1 pin "
                              "solar totals to the least-cost plan")

    p_sweep = sub.add_parser("sweep", help="run the weight sweep")
    common(p_sweep)
    p_sweep.add_argument("--weights", type=_weights_arg, default=None,
                         help="comma-separated cost weights, e.g. 1.0,0.6,0.2")
    p_sweep.add_argument("--no-fix", action="store_true",
                         help="do not pin solar totals to the base level "
                              "(only valid when every weight is 1.0)")

    p_mps = sub.add_parser("export-mps", help="write one scenario as MPS")
    common(p_mps)
    p_mps.add_argument("--weight", type=float, default=1.0)

    p_plot = sub.add_parser("plot", help="run the sweep and write figures")
    common(p_plot)
    p_plot.add_argument("--weights", type=_weights_arg, default=None)
    return parser


def _config_from(args) -> ScenarioConfig:
    cfg = load_config(args.config)
    if args.data is not None:
        cfg = replace(cfg, data_dir=args.data)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.preset is not None:
        cfg = replace(cfg, preset=args.preset)
    if getattr(args, "out", None) is not None:
        cfg = replace(cfg, out_dir=args.out)
    if getattr(args, "weights", None) is not None:
        cfg = replace(cfg, weights=args.weights)
    if getattr(args, "no_fix", False):
        cfg = replace(cfg, fix_total_solar=False)
    return cfg


def _ready_dataset(cfg: ScenarioConfig):
    ensure_dataset(cfg.data_dir, cfg.seed)
    findings = validate_data(cfg.data_dir)
    if findings:
        raise DataValidationError(findings)
    return load_dataset(cfg.data_dir, preset=cfg.preset)


def _pinned_problem(cfg: ScenarioConfig, dataset, weight: float) -> CEProblem:
    if weight >= 1.0:
        return CEProblem(weight_cost=1.0)
    base = solve_model(build_lp(
        CEProblem(weight_cost=1.0), dataset.system_data(),
        dataset.supply_points(), dataset.benefit_points(),
    ))
    return CEProblem(weight_cost=weight,
                     fix_total_solar=dict(base.total_solar))


def _cmd_validate(args) -> int:
    cfg = _config_from(args)
    ensure_dataset(cfg.data_dir, cfg.seed)
    findings = validate_data(cfg.data_dir)
    for finding in findings:
        print(finding)
    if findings:
        print(f"{len(findings)} finding(s) in {cfg.data_dir}")
        return 1
    print(f"{cfg.data_dir}: clean")
    return 0


def _cmd_curves(args) -> int:
    from .curves import benefit_rows, supply_rows, write_curve

    cfg = _config_from(args)
    dataset = _ready_dataset(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    supply = dataset.supply_points()
    benefit = dataset.benefit_points()
    for name, rows in (
        ("supply_curve.csv", supply_rows(supply)),
        ("benefit_net_curve.csv", benefit_rows(benefit)),
        ("benefit_gross_curve.csv", benefit_rows(benefit, gross=True)),
    ):
        write_curve(cfg.out_dir / name, rows)
        print(cfg.out_dir / name)
    total = sum(p.capacity_mw for p in supply)
    lo = supply[0].annualized_cost if supply else 0.0
    hi = supply[-1].annualized_cost if supply else 0.0
    print(f"{len(supply)} counties, {total:,.0f} MW buildable under "
          f"{cfg.preset!r}, cost {lo:,.0f}-{hi:,.0f} $/MW-yr")
    return 0


def _cmd_solve(args) -> int:
    cfg = _config_from(args)
    if not 0.0 <= args.weight <= 1.0:
        raise ValueError(f"weight {args.weight} outside [0, 1]")
    dataset = _ready_dataset(cfg)
    problem = _pinned_problem(cfg, dataset, args.weight)
    sol = solve_model(build_lp(
        problem, dataset.system_data(),
        dataset.supply_points(), dataset.benefit_points(),
    ))
    print(f"weight {args.weight:g} | objective {sol.objective:,.0f} | "
          f"cost {sol.cost_component:,.0f} | "
          f"benefit {sol.benefit_component:,.0f}")
    for y in sorted(sol.total_solar):
        print(f"  {y}: solar {sol.total_solar[y]:,.1f} MW, "
              f"emissions {sol.emissions[y]:,.0f} t")
    final = max(sol.total_solar)
    builds = sorted(
        ((c, mw) for (c, y), mw in sol.solar_mw.items()
         if y == final and mw > 0.05),
        key=lambda kv: -kv[1],
    )
    for county, mw in builds:
        print(f"  {county}: {mw:,.1f} MW")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _config_from(args)
    report = run_sweep(cfg)
    print(f"preset {report.preset}, periods {'-'.join(map(str, report.periods))}"
          f", totals {'pinned' if report.fixed_totals else 'free'}")
    print(f"{'weight':>7} {'cost':>16} {'benefit':>14} "
          f"{'d_cost':>12} {'d_benefit':>12}")
    for row in report.rows:
        print(f"{row.weight:7.2f} {row.cost:16,.0f} {row.benefit:14,.0f} "
              f"{row.delta_cost:+12,.0f} {row.delta_benefit:+12,.0f}")
    print(f"report files in {cfg.out_dir}")
    return 0


def _cmd_export_mps(args) -> int:
    cfg = _config_from(args)
    if not 0.0 <= args.weight <= 1.0:
        raise ValueError(f"weight {args.weight} outside [0, 1]")
    dataset = _ready_dataset(cfg)
    problem = _pinned_problem(cfg, dataset, args.weight)
    model = build_lp(problem, dataset.system_data(),
                     dataset.supply_points(), dataset.benefit_points())
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / f"model_w{args.weight:g}.mps"
    path.write_text(export_mps(model.lp))
    print(f"{path}: {model.lp.m} rows, {model.lp.n} columns")
    return 0


def _cmd_plot(args) -> int:
    cfg = _config_from(args)
    dataset = _ready_dataset(cfg)
    report = run_sweep(cfg, dataset=dataset)
    for path in emit_plots(report, dataset.supply_points(),
                           dataset.benefit_points(), cfg.out_dir):
        print(path)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "curves": _cmd_curves,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "export-mps": _cmd_export_mps,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return _COMMANDS[args.command](args)
    except CEInfeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (DataValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
