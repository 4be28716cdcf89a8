"""Dataset loading and validation.

The on-disk format is a directory of delimited tables plus one ``system.toml``
of scalars.  ``load_dataset`` hydrates it into the domain objects the curve
builders and the expansion model consume; ``validate_data`` walks the same
files defensively and returns a list of findings with file and line numbers
instead of raising on first contact.
"""

from __future__ import annotations

import csv

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .curves import BenefitPoint, SupplyPoint, build_benefit, build_supply
from .datagen import SIZE_CLASSES, STATES
from .economics import (
    YIELD_CLASS_ADJUST,
    CountyProfile,
    MultiplierRow,
    MultiplierTable,
    ProjectSpec,
    TaxSchedule,
    required_categories,
)
from .expansion import FleetUnit, Line, NewTech, Storage, SystemData, WindAsset
from .interconnect import (
    CIRCUIT_KINDS,
    TERRAIN_KINDS,
    VOLTAGE_CLASSES_KV,
    SpurOption,
    VoltageClass,
)
from .siting import (
    LAND_CLASSES,
    STATUSES,
    ZONING_PRESETS,
    Parcel,
    ZoningRule,
    apply_preset,
    county_capacity,
)

HOURS = 8760

TABLE_FILES = (
    "counties.csv", "multipliers.csv", "taxes.csv", "zoning.csv",
    "parcels.csv", "spurs.csv", "demand.csv", "cf_solar.csv", "cf_wind.csv",
    "wind_sites.csv", "fleet.csv", "new_techs.csv", "lines.csv",
    "storage.csv", "system.toml",
)


def _parse_terrain_mix(text: str) -> dict[str, float]:
    mix = {}
    for part in text.split(";"):
        name, _, frac = part.partition(":")
        mix[name.strip()] = float(frac)
    return mix


def _read_rows(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _read_series(path: Path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        names = header[1:]
        cols = [[] for _ in names]
        for row in reader:
            for k, v in enumerate(row[1:]):
                cols[k].append(float(v))
    return {name: np.array(col) for name, col in zip(names, cols)}


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dataset:
    """A fully hydrated data directory under one zoning preset."""

    data_dir: Path
    preset: str
    counties: tuple[CountyProfile, ...]
    subregions: tuple[str, ...]
    demand: dict[str, np.ndarray]
    fleet: tuple[FleetUnit, ...]
    new_techs: tuple[NewTech, ...]
    lines: tuple[Line, ...]
    storages: tuple[Storage, ...]
    wind: tuple[WindAsset, ...]
    co2_base: float
    reserve_margin: float
    period_demand_scale: dict[int, float]
    finance_rate: float
    finance_years: int
    itc: float
    solar_capex_per_mw: float
    solar_fom_per_mw_yr: float
    seed: int = 0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def system_data(self) -> SystemData:
        return SystemData(
            subregions=self.subregions,
            demand=self.demand,
            county_subregion={c.name: c.subregion for c in self.counties},
            fleet=self.fleet,
            new_techs=self.new_techs,
            lines=self.lines,
            storages=self.storages,
            wind=self.wind,
            co2_base=self.co2_base,
            reserve_margin=self.reserve_margin,
            period_demand_scale=self.period_demand_scale,
        )

    def supply_points(self) -> list[SupplyPoint]:
        if "supply" not in self._cache:
            self._cache["supply"] = build_supply(
                self.counties,
                self.solar_capex_per_mw,
                self.solar_fom_per_mw_yr,
                itc=self.itc,
                rate=self.finance_rate,
                years=self.finance_years,
            )
        return self._cache["supply"]

    def benefit_points(self) -> list[BenefitPoint]:
        if "benefit" not in self._cache:
            self._cache["benefit"] = build_benefit(
                self.counties, ProjectSpec(100.0)
            )
        return self._cache["benefit"]


def _land_capacity(
    parcels: list[Parcel], rules: list[ZoningRule], preset: str, tech: str
) -> float:
    adjusted = apply_preset(rules, preset)
    return county_capacity(parcels, {r.jurisdiction_id: r for r in adjusted}, tech)


def load_dataset(data_dir: Path | str, preset: str = "current") -> Dataset:
    """Hydrate ``data_dir`` with land screened under the given preset."""
    root = Path(data_dir)
    if preset not in ZONING_PRESETS:
        raise ValueError(f"unknown zoning preset {preset!r}")

    with open(root / "system.toml", "rb") as fh:
        cfg = tomllib.load(fh)

    taxes = {
        r["state"]: TaxSchedule(
            r["state"], float(r["year1_per_mw"]),
            kind=r["kind"], decline_rate=float(r["decline_rate"]),
        )
        for r in _read_rows(root / "taxes.csv")
    }

    tables: dict[str, dict[str, MultiplierRow]] = {}
    profile_state: dict[str, tuple[str, str]] = {}
    for r in _read_rows(root / "multipliers.csv"):
        pid = r["profile_id"]
        state, _, size = pid.partition("_")
        profile_state[pid] = (state, size)
        tables.setdefault(pid, {})[r["category"]] = MultiplierRow(
            float(r["output"]), float(r["earnings"]),
            float(r["jobs_per_million"]), float(r["value_added"]),
        )
    mult = {
        pid: MultiplierTable(state, size, rows=rows)
        for pid, rows in tables.items()
        for state, size in [profile_state[pid]]
    }

    parcels: dict[str, list[Parcel]] = {}
    for r in _read_rows(root / "parcels.csv"):
        parcels.setdefault(r["county"], []).append(Parcel(
            r["parcel_id"], r["subdivision_id"],
            float(r["length_m"]), float(r["width_m"]), float(r["area_m2"]),
            float(r["slope_deg"]), r["land_class"], int(r["urban_flag"]),
        ))

    zoning: dict[str, list[ZoningRule]] = {}
    for r in _read_rows(root / "zoning.csv"):
        zoning.setdefault(r["county"], []).append(ZoningRule(
            r["jurisdiction_id"], r["status"],
            float(r["road_setback_ft"] or 0.0),
            float(r["ppl_setback_ft"] or 0.0),
            float(r["nppl_setback_ft"] or 0.0),
            float(r["min_lot_acres"]) if r["min_lot_acres"] else None,
            float(r["max_lot_acres"]) if r["max_lot_acres"] else None,
            float(r["coverage_frac"]) if r["coverage_frac"] else None,
        ))

    spurs: dict[str, list[SpurOption]] = {}
    for r in _read_rows(root / "spurs.csv"):
        spurs.setdefault(r["county"], []).append(SpurOption(
            VoltageClass(int(r["kv"]), r["circuit"]),
            float(r["miles"]),
            terrain_mix=_parse_terrain_mix(r["terrain_mix"]),
            gen_kv=int(r["gen_kv"]),
        ))

    demand = _read_series(root / "demand.csv")
    cf_solar = _read_series(root / "cf_solar.csv")
    cf_wind = _read_series(root / "cf_wind.csv")

    counties = []
    for r in _read_rows(root / "counties.csv"):
        name = r["county"]
        pid = f"{r['state']}_{r['size_class']}"
        counties.append(CountyProfile(
            name=name,
            state=r["state"],
            size_class=r["size_class"],
            yield_class=r["yield_class"],
            multipliers=mult[pid],
            tax=taxes[r["state"]],
            lease_rate=float(r["lease_rate"]),
            subregion=r["subregion"],
            land_mw_solar=_land_capacity(
                parcels.get(name, []), zoning.get(name, []), preset, "solar"
            ),
            land_mw_wind=_land_capacity(
                parcels.get(name, []), zoning.get(name, []), preset, "wind"
            ),
            cf_solar=cf_solar[name],
            spur_options=tuple(spurs.get(name, ())),
        ))

    fleet = tuple(
        FleetUnit(
            r["subregion"], r["tech"], float(r["capacity_mw"]),
            float(r["heat_rate"]), float(r["fuel_cost"]), float(r["vom"]),
            float(r["emission_rate"]), bool(int(r["must_run"])),
        )
        for r in _read_rows(root / "fleet.csv")
    )
    new_techs = tuple(
        NewTech(
            r["name"], r["subregion"], float(r["capex_per_mw"]),
            float(r["fom_per_mw_yr"]), float(r["var_cost"]),
            float(r["emission_rate"]), float(r["max_build_mw"]),
            float(r["firm_credit"]),
        )
        for r in _read_rows(root / "new_techs.csv")
    )
    lines = tuple(
        Line(
            r["name"], r["from_subregion"], r["to_subregion"],
            float(r["capacity_mw"]), float(r["length_mi"]),
            float(r["expansion_cost_per_mw_mi"]), float(r["max_expansion_mw"]),
        )
        for r in _read_rows(root / "lines.csv")
    )
    storages = tuple(
        Storage(
            r["subregion"], float(r["power_mw"]), float(r["duration_h"]),
            float(r["round_trip_eff"]), float(r["max_new_mw"]),
            float(r["capex_per_mw"]), float(r["fom_per_mw_yr"]),
        )
        for r in _read_rows(root / "storage.csv")
    )
    wind = tuple(
        WindAsset(
            r["county"], r["subregion"], float(r["max_mw"]),
            float(r["cost_per_mw_yr"]), cf_wind[r["county"]],
        )
        for r in _read_rows(root / "wind_sites.csv")
    )

    return Dataset(
        data_dir=root,
        preset=preset,
        counties=tuple(counties),
        subregions=tuple(demand),
        demand=demand,
        fleet=fleet,
        new_techs=new_techs,
        lines=lines,
        storages=storages,
        wind=wind,
        co2_base=float(cfg["system"]["co2_base"]),
        reserve_margin=float(cfg["system"]["reserve_margin"]),
        period_demand_scale={
            int(y): float(s)
            for y, s in cfg["system"].get("period_demand_scale", {}).items()
        },
        finance_rate=float(cfg["finance"]["rate"]),
        finance_years=int(cfg["finance"]["years"]),
        itc=float(cfg["finance"]["itc"]),
        solar_capex_per_mw=float(cfg["solar"]["capex_per_mw"]),
        solar_fom_per_mw_yr=float(cfg["solar"]["fom_per_mw_yr"]),
        seed=int(cfg.get("meta", {}).get("seed", 0)),
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    """One data problem, addressable down to the offending line."""

    file: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}: {self.message}"


class _Auditor:
    def __init__(self, root: Path):
        self.root = root
        self.findings: list[Finding] = []

    def flag(self, file: str, line: int, message: str) -> None:
        self.findings.append(Finding(file, line, message))

    def rows(self, file: str) -> list[tuple[int, dict]]:
        """(line, row) pairs; header is line 1."""
        path = self.root / file
        if not path.exists():
            self.flag(file, 1, "file is missing")
            return []
        with open(path, newline="") as fh:
            return list(enumerate(csv.DictReader(fh), start=2))

    def number(self, file, line, row, key, lo=None, hi=None,
               strict_lo=False) -> float | None:
        raw = row.get(key, "")
        try:
            v = float(raw)
        except (TypeError, ValueError):
            self.flag(file, line, f"{key}: {raw!r} is not a number")
            return None
        if not np.isfinite(v):
            self.flag(file, line, f"{key}: {v} is not finite")
            return None
        if lo is not None and (v <= lo if strict_lo else v < lo):
            op = ">" if strict_lo else ">="
            self.flag(file, line, f"{key}: {v} must be {op} {lo}")
            return None
        if hi is not None and v > hi:
            self.flag(file, line, f"{key}: {v} must be <= {hi}")
            return None
        return v


def _audit_series(
    audit: _Auditor, file: str, expect_cols: set[str] | None,
    lo: float, hi: float | None, label: str,
) -> set[str]:
    path = audit.root / file
    if not path.exists():
        audit.flag(file, 1, "file is missing")
        return set()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "hour":
            audit.flag(file, 1, "first column must be 'hour'")
            return set()
        names = header[1:]
        count = 0
        for line, row in enumerate(reader, start=2):
            count += 1
            if count != int(float(row[0])) + 1:
                audit.flag(file, line, f"hour column out of order at {row[0]}")
                break
            for name, raw in zip(names, row[1:]):
                try:
                    v = float(raw)
                except ValueError:
                    audit.flag(file, line, f"{name}: {raw!r} is not a number")
                    continue
                if v < lo or (hi is not None and v > hi):
                    bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
                    audit.flag(file, line, f"{name}: {label} {v} outside {bound}")
        if count != HOURS:
            audit.flag(file, 1, f"expected {HOURS} hourly rows, found {count}")
    present = set(names)
    if expect_cols is not None:
        for missing in sorted(expect_cols - present):
            audit.flag(file, 1, f"missing column for {missing!r}")
        for extra in sorted(present - expect_cols):
            audit.flag(file, 1, f"column {extra!r} matches no known entry")
    return present


def validate_data(data_dir: Path | str) -> list[Finding]:
    """Audit a data directory; an empty result means it loads cleanly."""
    root = Path(data_dir)
    audit = _Auditor(root)

    # counties -----------------------------------------------------------
    county_rows = audit.rows("counties.csv")
    county_names: list[str] = []
    county_state: dict[str, str] = {}
    county_subregion: dict[str, str] = {}
    for line, r in county_rows:
        name = r.get("county", "")
        if name in county_names:
            audit.flag("counties.csv", line, f"duplicate county {name!r}")
        county_names.append(name)
        if r.get("state") not in STATES:
            audit.flag("counties.csv", line,
                       f"unknown state {r.get('state')!r}")
        if r.get("size_class") not in SIZE_CLASSES:
            audit.flag("counties.csv", line,
                       f"unknown size class {r.get('size_class')!r}")
        if r.get("yield_class") not in YIELD_CLASS_ADJUST:
            audit.flag("counties.csv", line,
                       f"unknown yield class {r.get('yield_class')!r}")
        audit.number("counties.csv", line, r, "lease_rate", lo=0.0,
                     strict_lo=True)
        audit.number("counties.csv", line, r, "target_cf", lo=0.05, hi=0.35)
        county_state[name] = r.get("state", "")
        county_subregion[name] = r.get("subregion", "")
    known_counties = set(county_names)

    # multiplier tables ---------------------------------------------------
    needed = set(required_categories())
    profiles_seen: dict[str, set[str]] = {}
    for line, r in audit.rows("multipliers.csv"):
        pid = r.get("profile_id", "")
        cat = r.get("category", "")
        if cat not in needed:
            audit.flag("multipliers.csv", line,
                       f"{pid}: category {cat!r} matches no expenditure line")
        seen = profiles_seen.setdefault(pid, set())
        if cat in seen:
            audit.flag("multipliers.csv", line, f"{pid}: duplicate row {cat!r}")
        seen.add(cat)
        out = audit.number("multipliers.csv", line, r, "output", lo=1.0)
        audit.number("multipliers.csv", line, r, "earnings", lo=0.0)
        audit.number("multipliers.csv", line, r, "jobs_per_million", lo=0.0)
        va = audit.number("multipliers.csv", line, r, "value_added", lo=0.0)
        if out is not None and va is not None and va > out + 1e-12:
            audit.flag("multipliers.csv", line,
                       f"{pid}/{cat}: value_added {va} exceeds output {out}")
    expected_profiles = {f"{s}_{z}" for s in STATES for z in SIZE_CLASSES}
    for pid in sorted(expected_profiles - set(profiles_seen)):
        audit.flag("multipliers.csv", 1, f"profile {pid} is missing entirely")
    for pid in sorted(set(profiles_seen) - expected_profiles):
        audit.flag("multipliers.csv", 1,
                   f"profile {pid!r} is not one of the {len(expected_profiles)} "
                   "state/size combinations")
    for pid, seen in sorted(profiles_seen.items()):
        if pid in expected_profiles:
            for cat in sorted(needed - seen):
                audit.flag("multipliers.csv", 1,
                           f"profile {pid} has no row for {cat!r}")

    # taxes ----------------------------------------------------------------
    tax_states = set()
    for line, r in audit.rows("taxes.csv"):
        state = r.get("state", "")
        tax_states.add(state)
        if state not in STATES:
            audit.flag("taxes.csv", line, f"unknown state {state!r}")
        if r.get("kind") not in ("flat_pilot", "declining"):
            audit.flag("taxes.csv", line, f"unknown schedule kind {r.get('kind')!r}")
        audit.number("taxes.csv", line, r, "year1_per_mw", lo=0.0)
        d = audit.number("taxes.csv", line, r, "decline_rate")
        if d is not None and d >= 1.0:
            audit.flag("taxes.csv", line, f"decline_rate {d} must be below 1.0")
    for line, r in county_rows:
        state = r.get("state")
        if state in STATES and state not in tax_states:
            audit.flag("counties.csv", line,
                       f"state {state} has no tax schedule")

    # zoning -----------------------------------------------------------------
    for line, r in audit.rows("zoning.csv"):
        if r.get("county") not in known_counties:
            audit.flag("zoning.csv", line, f"unknown county {r.get('county')!r}")
        if r.get("status") not in STATUSES:
            audit.flag("zoning.csv", line, f"unknown status {r.get('status')!r}")
        for k in ("road_setback_ft", "ppl_setback_ft", "nppl_setback_ft"):
            if r.get(k):
                audit.number("zoning.csv", line, r, k, lo=0.0)
        lo_v = (audit.number("zoning.csv", line, r, "min_lot_acres", lo=0.0)
                if r.get("min_lot_acres") else None)
        hi_v = (audit.number("zoning.csv", line, r, "max_lot_acres", lo=0.0)
                if r.get("max_lot_acres") else None)
        if lo_v is not None and hi_v is not None and lo_v > hi_v:
            audit.flag("zoning.csv", line,
                       f"min lot {lo_v} exceeds max lot {hi_v}")
        if r.get("coverage_frac"):
            audit.number("zoning.csv", line, r, "coverage_frac", lo=0.0, hi=1.0)

    # parcels ------------------------------------------------------------------
    parcel_ids = set()
    for line, r in audit.rows("parcels.csv"):
        if r.get("county") not in known_counties:
            audit.flag("parcels.csv", line, f"unknown county {r.get('county')!r}")
        pid = r.get("parcel_id", "")
        if pid in parcel_ids:
            audit.flag("parcels.csv", line, f"duplicate parcel id {pid!r}")
        parcel_ids.add(pid)
        length = audit.number("parcels.csv", line, r, "length_m", lo=0.0,
                              strict_lo=True)
        width = audit.number("parcels.csv", line, r, "width_m", lo=0.0,
                             strict_lo=True)
        area = audit.number("parcels.csv", line, r, "area_m2", lo=0.0,
                            strict_lo=True)
        if None not in (length, width, area):
            rect = length * width
            if abs(rect - area) > 0.05 * area:
                audit.flag(
                    "parcels.csv", line,
                    f"area {area} differs from length x width = {rect:.0f} "
                    f"by more than 5%",
                )
        audit.number("parcels.csv", line, r, "slope_deg", lo=0.0)
        if r.get("land_class") not in LAND_CLASSES:
            audit.flag("parcels.csv", line,
                       f"unknown land class {r.get('land_class')!r}")
        if r.get("urban_flag") not in ("0", "1", "2"):
            audit.flag("parcels.csv", line,
                       f"urban_flag {r.get('urban_flag')!r} must be 0, 1 or 2")

    # spurs ---------------------------------------------------------------------
    spur_counties = set()
    for line, r in audit.rows("spurs.csv"):
        county = r.get("county", "")
        spur_counties.add(county)
        if county not in known_counties:
            audit.flag("spurs.csv", line, f"unknown county {county!r}")
        kv = audit.number("spurs.csv", line, r, "kv")
        if kv is not None and int(kv) not in VOLTAGE_CLASSES_KV:
            audit.flag("spurs.csv", line,
                       f"kv {int(kv)} is not a standard class "
                       f"{VOLTAGE_CLASSES_KV}")
        if r.get("circuit") not in CIRCUIT_KINDS:
            audit.flag("spurs.csv", line, f"unknown circuit {r.get('circuit')!r}")
        audit.number("spurs.csv", line, r, "miles", lo=0.0)
        gen = audit.number("spurs.csv", line, r, "gen_kv")
        if gen is not None and int(gen) not in VOLTAGE_CLASSES_KV:
            audit.flag("spurs.csv", line, f"gen_kv {int(gen)} has no "
                       "transformer rate")
        try:
            mix = _parse_terrain_mix(r.get("terrain_mix", ""))
        except ValueError:
            audit.flag("spurs.csv", line,
                       f"terrain_mix {r.get('terrain_mix')!r} is unparseable")
            continue
        for terrain in mix:
            if terrain not in TERRAIN_KINDS:
                audit.flag("spurs.csv", line, f"unknown terrain {terrain!r}")
        total = sum(mix.values())
        if abs(total - 1.0) > 1e-6:
            audit.flag("spurs.csv", line,
                       f"terrain mix sums to {total:.6f} "
                       f"(off by {total - 1.0:+.6f})")
    for name in sorted(known_counties - spur_counties):
        audit.flag("spurs.csv", 1, f"county {name} has no tie-in option")

    # hourly series ---------------------------------------------------------------
    demand_cols = _audit_series(audit, "demand.csv", None, 0.0, None, "demand")
    for line, r in county_rows:
        sub = r.get("subregion", "")
        if demand_cols and sub not in demand_cols:
            audit.flag("counties.csv", line,
                       f"subregion {sub!r} has no demand column")
    _audit_series(audit, "cf_solar.csv", known_counties, 0.0, 1.0,
                  "capacity factor")

    wind_rows = audit.rows("wind_sites.csv")
    wind_counties = set()
    for line, r in wind_rows:
        county = r.get("county", "")
        wind_counties.add(county)
        if county not in known_counties:
            audit.flag("wind_sites.csv", line, f"unknown county {county!r}")
        elif r.get("subregion") != county_subregion.get(county):
            audit.flag("wind_sites.csv", line,
                       f"subregion {r.get('subregion')!r} disagrees with "
                       f"counties.csv ({county_subregion.get(county)!r})")
        audit.number("wind_sites.csv", line, r, "max_mw", lo=0.0)
        audit.number("wind_sites.csv", line, r, "cost_per_mw_yr", lo=0.0,
                     strict_lo=True)
    _audit_series(audit, "cf_wind.csv", wind_counties, 0.0, 1.0,
                  "capacity factor")

    # system tables ------------------------------------------------------------
    for line, r in audit.rows("fleet.csv"):
        if demand_cols and r.get("subregion") not in demand_cols:
            audit.flag("fleet.csv", line,
                       f"unknown subregion {r.get('subregion')!r}")
        audit.number("fleet.csv", line, r, "capacity_mw", lo=0.0)
        audit.number("fleet.csv", line, r, "heat_rate", lo=0.0)
        audit.number("fleet.csv", line, r, "fuel_cost", lo=0.0)
        audit.number("fleet.csv", line, r, "vom", lo=0.0)
        audit.number("fleet.csv", line, r, "emission_rate", lo=0.0)
        if r.get("must_run") not in ("0", "1"):
            audit.flag("fleet.csv", line,
                       f"must_run {r.get('must_run')!r} must be 0 or 1")

    for line, r in audit.rows("new_techs.csv"):
        if demand_cols and r.get("subregion") not in demand_cols:
            audit.flag("new_techs.csv", line,
                       f"unknown subregion {r.get('subregion')!r}")
        for k in ("capex_per_mw", "fom_per_mw_yr", "var_cost",
                  "emission_rate", "max_build_mw"):
            audit.number("new_techs.csv", line, r, k, lo=0.0)
        audit.number("new_techs.csv", line, r, "firm_credit", lo=0.0, hi=1.0)

    for line, r in audit.rows("lines.csv"):
        ends = (r.get("from_subregion"), r.get("to_subregion"))
        for end in ends:
            if demand_cols and end not in demand_cols:
                audit.flag("lines.csv", line, f"unknown subregion {end!r}")
        if ends[0] == ends[1]:
            audit.flag("lines.csv", line, "corridor loops back to its origin")
        audit.number("lines.csv", line, r, "capacity_mw", lo=0.0)
        audit.number("lines.csv", line, r, "length_mi", lo=0.0)
        audit.number("lines.csv", line, r, "expansion_cost_per_mw_mi", lo=0.0)
        audit.number("lines.csv", line, r, "max_expansion_mw", lo=0.0)

    for line, r in audit.rows("storage.csv"):
        if demand_cols and r.get("subregion") not in demand_cols:
            audit.flag("storage.csv", line,
                       f"unknown subregion {r.get('subregion')!r}")
        audit.number("storage.csv", line, r, "power_mw", lo=0.0)
        audit.number("storage.csv", line, r, "duration_h", lo=0.0,
                     strict_lo=True)
        rte = audit.number("storage.csv", line, r, "round_trip_eff", lo=0.0,
                           hi=1.0, strict_lo=True)
        del rte
        audit.number("storage.csv", line, r, "max_new_mw", lo=0.0)
        audit.number("storage.csv", line, r, "capex_per_mw", lo=0.0)
        audit.number("storage.csv", line, r, "fom_per_mw_yr", lo=0.0)

    # scalars -----------------------------------------------------------------
    toml_path = root / "system.toml"
    if not toml_path.exists():
        audit.flag("system.toml", 1, "file is missing")
    else:
        try:
            with open(toml_path, "rb") as fh:
                cfg = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            audit.flag("system.toml", 1, f"parse error: {exc}")
            cfg = {}
        def scalar(section, key, lo=None, hi=None):
            try:
                v = float(cfg[section][key])
            except (KeyError, TypeError, ValueError):
                audit.flag("system.toml", 1, f"missing or bad {section}.{key}")
                return None
            if lo is not None and v < lo:
                audit.flag("system.toml", 1, f"{section}.{key} = {v} below {lo}")
            if hi is not None and v > hi:
                audit.flag("system.toml", 1, f"{section}.{key} = {v} above {hi}")
            return v
        if cfg:
            scalar("system", "co2_base", lo=0.0)
            scalar("system", "reserve_margin", lo=0.0, hi=1.0)
            scalar("finance", "rate", lo=1e-9, hi=0.5)
            scalar("finance", "years", lo=1)
            itc = scalar("finance", "itc", lo=0.0)
            if itc is not None and itc >= 1.0:
                audit.flag("system.toml", 1, f"finance.itc = {itc} must be < 1")
            scalar("solar", "capex_per_mw", lo=0.0)
            scalar("solar", "fom_per_mw_yr", lo=0.0)
            for y, s in cfg.get("system", {}).get(
                    "period_demand_scale", {}).items():
                try:
                    int(y)
                    ok = float(s) > 0
                except (TypeError, ValueError):
                    ok = False
                if not ok:
                    audit.flag("system.toml", 1,
                               f"bad period_demand_scale entry {y!r} = {s!r}")

    return audit.findings
