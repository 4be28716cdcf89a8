"""Weight-sweep orchestration: solve, tabulate, and write result files.

The sweep solves the pure least-cost scenario first, optionally pins every
later scenario's period solar totals to that base level, and then walks the
remaining weights in descending order so each solve warm-starts from its
neighbour's basis.  All emitted files are deterministic for a fixed dataset.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .config import ScenarioConfig
from .curves import benefit_rows, supply_rows, write_curve
from .dataio import Dataset, load_dataset, validate_data
from .datagen import ensure_dataset
from .expansion import (
    DEFAULT_PERIODS,
    CEInfeasible,
    CEProblem,
    CESolution,
    build_lp,
    solve_model,
)

_TECH_FAMILIES = ("solar", "wind", "storage", "lines")


class DataValidationError(ValueError):
    """The dataset failed its pre-run audit; findings attached."""

    def __init__(self, findings):
        self.findings = tuple(findings)
        shown = "\n".join(f"  {f}" for f in self.findings[:12])
        more = "" if len(self.findings) <= 12 else (
            f"\n  ... and {len(self.findings) - 12} more"
        )
        super().__init__(
            f"dataset failed validation with {len(self.findings)} finding(s):\n"
            f"{shown}{more}"
        )


@dataclass(frozen=True)
class WeightRow:
    """One sweep scenario, summarized, with deltas against the base."""

    weight: float
    cost: float
    benefit: float
    objective: float
    total_solar: dict[int, float]          # cumulative MW per period
    emissions: dict[int, float]            # t/yr per period
    solar_by_state: dict[str, float]       # final-period MW per state
    invest_by_tech: dict[str, float]       # final-period MW per tech family
    delta_cost: float
    delta_benefit: float
    delta_solar_by_state: dict[str, float]


@dataclass(frozen=True)
class RunReport:
    """Full sweep output: one row per weight plus the underlying solutions."""

    preset: str
    periods: tuple[int, ...]
    fixed_totals: dict[int, float] | None
    rows: tuple[WeightRow, ...]            # descending weight
    base: CESolution                       # the w=1 solution
    solutions: dict[float, CESolution]

    @property
    def base_row(self) -> WeightRow:
        for row in self.rows:
            if row.weight == 1.0:
                return row
        raise KeyError("report has no w=1 row")


def _solar_by_state(sol: CESolution, county_state: dict[str, str],
                    year: int) -> dict[str, float]:
    out: dict[str, float] = {}
    for (county, y), mw in sol.solar_mw.items():
        if y == year:
            state = county_state[county]
            out[state] = out.get(state, 0.0) + mw
    return dict(sorted(out.items()))


def _invest_by_tech(sol: CESolution, year: int) -> dict[str, float]:
    out = {k: 0.0 for k in _TECH_FAMILIES}
    out["solar"] = sol.total_solar.get(year, 0.0)
    out["wind"] = sum(v for (_, y), v in sol.wind_mw.items() if y == year)
    out["storage"] = sum(
        v for (_, y), v in sol.storage_mw.items() if y == year
    )
    out["lines"] = sum(v for (_, y), v in sol.line_mw.items() if y == year)
    for (key, y), v in sol.new_mw.items():
        if y == year:
            tech = key.split(":", 1)[0]
            out[tech] = out.get(tech, 0.0) + v
    return dict(sorted(out.items()))


def _row(weight: float, sol: CESolution, base: CESolution,
         county_state: dict[str, str], final: int) -> WeightRow:
    states = _solar_by_state(sol, county_state, final)
    base_states = _solar_by_state(base, county_state, final)
    return WeightRow(
        weight=weight,
        cost=sol.cost_component,
        benefit=sol.benefit_component,
        objective=sol.objective,
        total_solar=dict(sol.total_solar),
        emissions=dict(sol.emissions),
        solar_by_state=states,
        invest_by_tech=_invest_by_tech(sol, final),
        delta_cost=sol.cost_component - base.cost_component,
        delta_benefit=sol.benefit_component - base.benefit_component,
        delta_solar_by_state={
            s: states.get(s, 0.0) - base_states.get(s, 0.0)
            for s in sorted(set(states) | set(base_states))
        },
    )


def run_sweep(
    config: ScenarioConfig,
    dataset: Dataset | None = None,
    periods: tuple[int, ...] = DEFAULT_PERIODS,
) -> RunReport:
    """Solve every configured weight and write report files and curves.

    The dataset is generated on demand from the configured seed, audited,
    and loaded under the configured zoning preset (pass ``dataset`` to skip
    all three).  The least-cost scenario always runs first; an infeasible
    scenario raises :class:`CEInfeasible` naming the scenario and the
    constraints that could not be served.
    """
    if dataset is None:
        ensure_dataset(config.data_dir, config.seed)
        findings = validate_data(config.data_dir)
        if findings:
            raise DataValidationError(findings)
        dataset = load_dataset(config.data_dir, preset=config.preset)

    weights = sorted(set(config.weights), reverse=True)
    if weights[-1] < 1.0 and not config.fix_total_solar:
        raise ValueError(
            "weights below 1 need fix_total_solar: without the pin the "
            "benefit term grows without bound in the solar direction"
        )

    sysd = dataset.system_data()
    supply = dataset.supply_points()
    benefit = dataset.benefit_points()

    def run(problem: CEProblem, warm):
        model = build_lp(problem, sysd, supply, benefit)
        try:
            return solve_model(model, warm=warm)
        except CEInfeasible as exc:
            raise CEInfeasible(
                f"scenario w={problem.weight_cost:g} "
                f"(preset {config.preset}): {exc.status}",
                exc.row_names,
            ) from exc

    base = run(CEProblem(weight_cost=1.0, periods=periods), None)
    fixed = dict(base.total_solar) if config.fix_total_solar else None

    solutions: dict[float, CESolution] = {1.0: base}
    warm = base.warm
    for w in weights:
        if w == 1.0:
            continue
        sol = run(
            CEProblem(weight_cost=w, periods=periods, fix_total_solar=fixed),
            warm,
        )
        solutions[w] = sol
        warm = sol.warm

    county_state = {c.name: c.state for c in dataset.counties}
    final = periods[-1]
    rows = tuple(
        _row(w, solutions[w], base, county_state, final) for w in weights
    )
    report = RunReport(
        preset=config.preset,
        periods=periods,
        fixed_totals=fixed,
        rows=rows,
        base=base,
        solutions=solutions,
    )
    write_report_files(report, dataset, config.out_dir)
    return report


# ---------------------------------------------------------------------------
# File emission
# ---------------------------------------------------------------------------

def write_report_files(
    report: RunReport, dataset: Dataset, out_dir: Path | str
) -> list[Path]:
    """Write the sweep tables and the three curve files; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []

    states = sorted({c.state for c in dataset.counties})
    techs = sorted(report.rows[0].invest_by_tech) if report.rows else []
    path = out / "report.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["weight", "cost", "benefit", "delta_cost", "delta_benefit"]
            + [f"emissions_{y}" for y in report.periods]
            + [f"solar_{y}" for y in report.periods]
            + [f"solar_{s}" for s in states]
            + [f"delta_solar_{s}" for s in states]
            + [f"invest_{t}" for t in techs]
        )
        for row in report.rows:
            writer.writerow(
                [f"{row.weight:.2f}", f"{row.cost:.2f}", f"{row.benefit:.2f}",
                 f"{row.delta_cost:.2f}", f"{row.delta_benefit:.2f}"]
                + [f"{row.emissions[y]:.2f}" for y in report.periods]
                + [f"{row.total_solar[y]:.3f}" for y in report.periods]
                + [f"{row.solar_by_state.get(s, 0.0):.3f}" for s in states]
                + [f"{row.delta_solar_by_state.get(s, 0.0):.3f}"
                   for s in states]
                + [f"{row.invest_by_tech.get(t, 0.0):.3f}" for t in techs]
            )
    paths.append(path)

    path = out / "solar_allocations.csv"
    counties = sorted(c.name for c in dataset.counties)
    county_state = {c.name: c.state for c in dataset.counties}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["weight", "county", "state", "year", "mw"])
        for w in sorted(report.solutions, reverse=True):
            sol = report.solutions[w]
            for county in counties:
                for y in report.periods:
                    mw = sol.solar_mw.get((county, y), 0.0)
                    writer.writerow(
                        [f"{w:.2f}", county, county_state[county], y,
                         f"{mw:.3f}"]
                    )
    paths.append(path)

    for name, rows in (
        ("supply_curve.csv", supply_rows(dataset.supply_points())),
        ("benefit_net_curve.csv", benefit_rows(dataset.benefit_points())),
        ("benefit_gross_curve.csv",
         benefit_rows(dataset.benefit_points(), gross=True)),
    ):
        path = out / name
        write_curve(path, rows)
        paths.append(path)
    return paths
