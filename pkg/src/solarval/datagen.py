"""Deterministic synthetic dataset generator.

Builds the bundled 12-county demo system from a single integer seed:
multiplier tables for 18 representative county economies (6 states x 3 size
classes), state tax schedules, land parcels and ordinances, candidate spur
lines, hourly demand and resource series, the existing fleet, and the
expansion menu.  Everything is calibrated so the large-Ohio profile lands on
a gross value-added of $34,500 per MW-yr with a 13% agricultural offset, and
re-running with the same seed reproduces every file byte for byte.

The generator is the calibration script: targets live here as constants, and
the emitted tables are checked against them before anything is written.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .economics import (
    INSTALL_COST_PER_W_DC,
    OM_COST_PER_KW_DC_YR,
    ROW_AGRICULTURE,
    AgBaseline,
    CountyProfile,
    MultiplierRow,
    MultiplierTable,
    ProjectSpec,
    TaxSchedule,
    lifecycle_net_impact,
    required_categories,
)

DATASET_VERSION = 1
DEFAULT_SEED = 2012

STATES = ("OH", "IN", "WI", "MI", "IL", "MN")
SIZE_CLASSES = ("small", "medium", "large")

# Calibration anchors for the multiplier tables.  The large-Ohio profile is
# pinned exactly; every other profile scales off it by state and size.
GROSS_VA_ANCHOR = 34_500.0      # $/MW_ac-yr, large Ohio county
AG_REDUCTION_ANCHOR = 0.13      # fraction of gross lost to displaced crops
STATE_SCALE = {"OH": 1.00, "IN": 0.97, "WI": 0.94,
               "MI": 0.96, "IL": 1.02, "MN": 0.95}
SIZE_SCALE = {"large": 1.00, "medium": 0.84, "small": 0.74}

TAX_SCHEDULES = {
    "OH": ("flat_pilot", 8_750.0, 0.0),
    "IN": ("declining", 14_000.0, 0.055),
    "WI": ("declining", 7_800.0, -0.015),   # assessments escalate
    "MI": ("flat_pilot", 7_200.0, 0.0),
    "IL": ("declining", 12_500.0, 0.045),
    "MN": ("flat_pilot", 8_200.0, 0.0),
}

# county, state, subregion, size class, yield class
COUNTY_DEFS = (
    ("Ashford", "OH", "OH", "large", "above"),
    ("Brockway", "OH", "OH", "medium", "average"),
    ("Carver", "OH", "OH", "small", "average"),
    ("Dunmore", "OH", "OH", "medium", "below"),
    ("Eastvale", "OH", "OH", "large", "average"),
    ("Fairbank", "IN", "IN", "large", "average"),
    ("Glenrose", "IN", "IN", "medium", "average"),
    ("Harlow", "IN", "IN", "small", "above"),
    ("Ironwood", "WI", "WI", "medium", "average"),
    ("Juniper", "WI", "WI", "small", "below"),
    ("Kestrel", "WI", "WI", "large", "above"),
    ("Lakemont", "WI", "WI", "medium", "average"),
)
SUBREGIONS = ("OH", "IN", "WI")

REGION_MEAN_MW = {"OH": 1250.0, "IN": 760.0, "WI": 640.0}
PERIOD_DEMAND_SCALE = {2030: 1.05, 2035: 1.105, 2040: 1.16}
CO2_BASE_TONS = 15.0e6
RESERVE_MARGIN = 0.15

SOLAR_ILR = 1.25
SOLAR_CAPEX_PER_MW = INSTALL_COST_PER_W_DC * 1e6 * SOLAR_ILR   # $/MW_ac
SOLAR_FOM_PER_MW_YR = OM_COST_PER_KW_DC_YR * 1e3 * SOLAR_ILR   # $/MW_ac-yr
SOLAR_ITC = 0.30
FINANCE_RATE = 0.054
FINANCE_YEARS = 30

STATE_CF_BASE = {"OH": 0.206, "IN": 0.202, "WI": 0.196}

FLEET_ROWS = (
    # subregion, tech, MW, heat rate, fuel, vom, t/MWh, must_run
    ("OH", "nuclear", 400.0, 0.0, 0.0, 0.0, 0.0, True),
    ("OH", "coal", 900.0, 10.2, 2.15, 4.3, 0.98, False),
    ("OH", "gas_cc", 700.0, 7.0, 3.60, 2.3, 0.37, False),
    ("OH", "gas_ct", 300.0, 10.6, 3.60, 4.8, 0.56, False),
    ("IN", "coal", 700.0, 10.4, 2.20, 4.0, 1.00, False),
    ("IN", "gas_cc", 500.0, 7.1, 3.55, 2.5, 0.375, False),
    ("IN", "gas_ct", 200.0, 10.8, 3.55, 5.0, 0.57, False),
    ("WI", "hydro", 150.0, 0.0, 0.0, 0.0, 0.0, True),
    ("WI", "coal", 500.0, 10.0, 2.30, 4.2, 0.95, False),
    ("WI", "gas_cc", 400.0, 7.2, 3.50, 2.6, 0.38, False),
    ("WI", "gas_ct", 150.0, 10.9, 3.50, 5.2, 0.577, False),
)

NEW_TECH_ROWS = (
    # name, subregion, capex, fom, var cost, t/MWh, max MW, firm credit
    ("ngcc", "OH", 1.05e6, 25_000.0, 27.0, 0.37, 1_500.0, 1.0),
    ("ngcc_ccs", "OH", 2.40e6, 60_000.0, 36.0, 0.05, 2_500.0, 1.0),
)

LINE_ROWS = (
    # name, from, to, MW, miles
    ("OH-IN", "OH", "IN", 800.0, 180.0),
    ("IN-WI", "IN", "WI", 500.0, 220.0),
    ("OH-WI", "OH", "WI", 300.0, 260.0),
)

STORAGE_ROWS = (
    # subregion, power MW, hours, round-trip eff
    ("OH", 300.0, 4.0, 0.85),
)

WIND_SITES = (
    # county, max MW, $/MW-yr
    ("Harlow", 250.0, 138_000.0),
    ("Juniper", 200.0, 142_000.0),
)

# Near-node counties get plenty of modest parcels; the big-economy counties
# are land-rich too but sit far from strong network nodes (long spurs), so
# their per-MW tie-in runs several thousand dollars higher.
PARCEL_COUNT = {"large": 26, "medium": 30, "small": 30}

HOURS = 8760


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([DATASET_VERSION, seed, stream])


def state_tax(state: str) -> TaxSchedule:
    kind, year1, decline = TAX_SCHEDULES[state]
    return TaxSchedule(state, year1, kind=kind, decline_rate=decline)


# ---------------------------------------------------------------------------
# Multiplier tables
# ---------------------------------------------------------------------------

def _gross_at_defaults(table: MultiplierTable) -> float:
    county = CountyProfile(
        name="anchor",
        state=table.state,
        size_class=table.size_class,
        yield_class="average",
        multipliers=table,
        tax=state_tax(table.state),
    )
    return lifecycle_net_impact(ProjectSpec(100.0), county).gross_va_per_mw_yr


def _ag_direct_per_mw_yr() -> float:
    """Displaced crop revenue, $ per MW_ac per operating year."""
    spec = ProjectSpec(100.0)
    annual = spec.displaced_ag_acres * AgBaseline().adjusted_revenue_per_acre()
    return annual * spec.total_years / (spec.life_years * spec.nameplate_ac)


def build_multiplier_tables(seed: int = DEFAULT_SEED) -> dict[str, MultiplierTable]:
    """All 18 calibrated profiles, keyed by ``{state}_{size}``."""
    rng = _rng(seed, 0)
    categories = required_categories()
    ag_direct = _ag_direct_per_mw_yr()
    tables: dict[str, MultiplierTable] = {}
    for state in STATES:
        for size in SIZE_CLASSES:
            target = GROSS_VA_ANCHOR * STATE_SCALE[state] * SIZE_SCALE[size]
            raw = {
                cat: (
                    float(rng.uniform(1.35, 1.85)),
                    float(rng.uniform(0.35, 0.60)),
                    float(rng.uniform(3.5, 8.5)),
                    float(rng.uniform(0.68, 0.98)),
                )
                for cat in categories
            }
            if state == "OH" and size == "large":
                reduction = AG_REDUCTION_ANCHOR
            else:
                reduction = float(rng.uniform(0.125, 0.148))

            probe = MultiplierTable(state, size, rows={
                cat: MultiplierRow(o, e, j, v) for cat, (o, e, j, v) in raw.items()
            })
            kappa = target / _gross_at_defaults(probe)

            rows = {}
            for cat, (o, e, j, v) in raw.items():
                if cat == ROW_AGRICULTURE:
                    va = reduction * target / ag_direct
                    rows[cat] = MultiplierRow(
                        max(1.35, 1.6 * va), 0.30 * va, 5.5, va
                    )
                else:
                    rows[cat] = MultiplierRow(o, e * kappa, j, v * kappa)
            table = MultiplierTable(state, size, rows=rows)

            got = _gross_at_defaults(table)
            if abs(got - target) > 1e-6 * target:
                raise AssertionError(
                    f"{table.profile_id}: gross {got:.4f} missed target {target:.4f}"
                )
            tables[table.profile_id] = table
    return tables


# ---------------------------------------------------------------------------
# Land: parcels and ordinances
# ---------------------------------------------------------------------------

def _county_zoning(county: str, rng: np.random.Generator) -> list[dict]:
    rows = []
    statuses = rng.choice(
        ["allow", "silent", "unzoned", "ban"], size=3, p=[0.6, 0.2, 0.1, 0.1]
    ).tolist()
    if "allow" not in statuses:
        statuses[0] = "allow"
    for name, status in zip(("north", "south", "east"), statuses):
        row = {
            "county": county,
            "jurisdiction_id": f"{county}_{name}",
            "status": status,
            "road_setback_ft": 0.0,
            "ppl_setback_ft": 0.0,
            "nppl_setback_ft": 0.0,
            "min_lot_acres": "",
            "max_lot_acres": "",
            "coverage_frac": "",
        }
        if status == "allow":
            row.update(
                road_setback_ft=round(float(rng.uniform(100, 280)), 1),
                ppl_setback_ft=round(float(rng.uniform(40, 140)), 1),
                nppl_setback_ft=round(float(rng.uniform(20, 90)), 1),
                min_lot_acres=round(float(rng.uniform(1.0, 4.0)), 2),
                coverage_frac=round(float(rng.uniform(0.55, 0.78)), 3),
            )
        elif status == "unzoned":
            row.update(
                road_setback_ft=100.0, ppl_setback_ft=50.0,
                min_lot_acres=1.0, coverage_frac=0.40,
            )
        rows.append(row)
    return rows


def _county_parcels(
    county: str, size_class: str, jurisdictions: list[str],
    rng: np.random.Generator,
) -> list[dict]:
    n = PARCEL_COUNT[size_class] + int(rng.integers(-4, 5))
    # most parcels sit in a zoned jurisdiction; some land is outside any
    # ordinance and falls back to the unzoned defaults downstream
    pool = jurisdictions + [f"{county}_outlying"]
    weights = np.array([0.32, 0.32, 0.26, 0.10])
    rows = []
    for k in range(n):
        length = float(rng.uniform(1400.0, 3000.0))
        width = float(rng.uniform(900.0, 2200.0))
        area = length * width * float(rng.uniform(0.97, 1.03))
        slope = min(25.0, float(rng.gamma(2.2, 1.4)))
        land_class = str(rng.choice(
            ["agricultural", "non_agricultural", "restricted"],
            p=[0.80, 0.12, 0.08],
        ))
        urban = int(rng.choice([0, 1, 2], p=[0.90, 0.06, 0.04]))
        sub = str(rng.choice(pool, p=weights))
        rows.append({
            "county": county,
            "parcel_id": f"{county}-{k:03d}",
            "subdivision_id": sub,
            "length_m": round(length, 1),
            "width_m": round(width, 1),
            "area_m2": round(area, 1),
            "slope_deg": round(slope, 2),
            "land_class": land_class,
            "urban_flag": urban,
        })
    return rows


# ---------------------------------------------------------------------------
# Interconnection options
# ---------------------------------------------------------------------------

def _county_spurs(county: str, size_class: str, rng: np.random.Generator) -> list[dict]:
    """Candidate tie-ins.  Bigger-economy counties sit farther from strong
    network nodes, so their routes are longer and cross rougher terrain."""
    def row(kv, circuit, miles, mix):
        return {
            "county": county, "kv": kv, "circuit": circuit,
            "miles": round(miles, 2), "terrain_mix": mix, "gen_kv": 69,
        }

    if size_class == "small":
        return [
            row(69, "single", float(rng.uniform(0.8, 1.6)), "light_vegetation:1.0"),
            row(161, "single", float(rng.uniform(1.5, 2.5)), "light_vegetation:1.0"),
        ]
    if size_class == "medium":
        return [
            row(69, "single", float(rng.uniform(2.2, 3.6)),
                "light_vegetation:0.9;forest:0.1"),
            row(161, "single", float(rng.uniform(2.6, 4.2)),
                "light_vegetation:0.9;forest:0.1"),
        ]
    return [
        row(161, "single", float(rng.uniform(13.0, 17.0)),
            "light_vegetation:0.60;forest:0.28;wetland:0.12"),
        row(230, "single", float(rng.uniform(14.0, 18.0)),
            "light_vegetation:0.60;forest:0.28;wetland:0.12"),
    ]


# ---------------------------------------------------------------------------
# Hourly series
# ---------------------------------------------------------------------------

def _demand_series(mean_mw: float, rng: np.random.Generator) -> np.ndarray:
    t = np.arange(HOURS)
    doy = t // 24
    h = t % 24
    dow = (doy + 6) % 7
    seasonal = 1.0 + 0.14 * np.cos(2 * np.pi * (doy - 201) / 365.0)
    diurnal = (1.0 + 0.11 * np.cos(2 * np.pi * (h - 15.5) / 24.0)
               + 0.045 * np.cos(4 * np.pi * (h - 15.5) / 24.0))
    week = np.where(dow < 5, 1.025, 0.945)
    noise = np.empty(HOURS)
    e = 0.0
    steps = rng.normal(0.0, 0.018, HOURS)
    for i in range(HOURS):
        e = 0.82 * e + steps[i]
        noise[i] = e
    series = seasonal * diurnal * week * np.exp(noise)
    return series * (mean_mw / series.mean())


def _solar_cf_series(
    target_cf: float, regional_cloud: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    t = np.arange(HOURS)
    doy = t // 24
    h = t % 24
    daylen = 12.15 + 2.85 * np.sin(2 * np.pi * (doy - 80) / 365.0)
    frac = (h + 0.5 - (12.0 - daylen / 2.0)) / daylen
    shape = np.where(
        (frac > 0.0) & (frac < 1.0),
        np.sin(np.pi * np.clip(frac, 0.0, 1.0)) ** 1.18,
        0.0,
    )
    amp = 0.80 + 0.14 * np.sin(2 * np.pi * (doy - 80) / 365.0)
    own = rng.beta(1.6, 4.0, 365)
    cloud_day = 1.0 - 0.5 * (0.6 * regional_cloud + 0.4 * own)
    jitter = rng.uniform(0.95, 1.0, HOURS)
    raw = shape * amp * cloud_day[doy] * jitter
    series = raw * (target_cf / raw.mean())
    # a hard ceiling; the handful of clipped hours barely moves the mean
    return np.minimum(series, 0.985)


def _wind_cf_series(target_cf: float, rng: np.random.Generator) -> np.ndarray:
    t = np.arange(HOURS)
    doy = t // 24
    h = t % 24
    x = np.empty(HOURS)
    e = 0.0
    steps = rng.normal(0.0, 0.25, HOURS)
    for i in range(HOURS):
        e = 0.97 * e + steps[i]
        x[i] = e
    base = 1.0 / (1.0 + np.exp(-(x - 0.3)))
    night = 1.0 + 0.08 * np.cos(2 * np.pi * (h - 3) / 24.0)
    winter = 1.0 + 0.15 * np.cos(2 * np.pi * (doy - 15) / 365.0)
    raw = base * night * winter
    series = raw * (target_cf / raw.mean())
    return np.clip(series, 0.0, 0.97)


# ---------------------------------------------------------------------------
# File emission
# ---------------------------------------------------------------------------

def _write_csv(path: Path, fieldnames: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)


def _write_series_csv(path: Path, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["hour"] + names)
        data = np.column_stack([columns[n] for n in names])
        for i in range(HOURS):
            writer.writerow([i] + [f"{v:.6f}" for v in data[i]])


def generate(data_dir: Path | str, seed: int = DEFAULT_SEED) -> Path:
    """Write the full dataset into ``data_dir`` (created if needed)."""
    out = Path(data_dir)
    out.mkdir(parents=True, exist_ok=True)

    # counties ---------------------------------------------------------------
    rng = _rng(seed, 1)
    county_rows = []
    for name, state, subregion, size, yield_class in COUNTY_DEFS:
        county_rows.append({
            "county": name, "state": state, "subregion": subregion,
            "size_class": size, "yield_class": yield_class,
            "lease_rate": 5.0 * round(float(rng.uniform(540, 640)) / 5.0),
            "target_cf": round(
                STATE_CF_BASE[state] + float(rng.uniform(-0.006, 0.006)), 4
            ),
        })
    _write_csv(out / "counties.csv",
               list(county_rows[0]), county_rows)

    # multipliers -------------------------------------------------------------
    tables = build_multiplier_tables(seed)
    mult_rows = []
    for pid in sorted(tables):
        table = tables[pid]
        for cat in required_categories():
            r = table.rows[cat]
            mult_rows.append({
                "profile_id": pid, "category": cat,
                "output": f"{r.output:.8f}",
                "earnings": f"{r.earnings:.8f}",
                "jobs_per_million": f"{r.jobs_per_million:.8f}",
                "value_added": f"{r.value_added:.8f}",
            })
    _write_csv(out / "multipliers.csv", list(mult_rows[0]), mult_rows)

    # taxes -------------------------------------------------------------------
    tax_rows = [
        {"state": s, "kind": k, "year1_per_mw": y, "decline_rate": d}
        for s, (k, y, d) in TAX_SCHEDULES.items()
    ]
    _write_csv(out / "taxes.csv", list(tax_rows[0]), tax_rows)

    # land --------------------------------------------------------------------
    zoning_rows, parcel_rows = [], []
    for idx, (name, _, _, size, _) in enumerate(COUNTY_DEFS):
        zrng = _rng(seed, 100 + idx)
        county_zoning = _county_zoning(name, zrng)
        zoning_rows.extend(county_zoning)
        juris = [r["jurisdiction_id"] for r in county_zoning]
        parcel_rows.extend(_county_parcels(name, size, juris, zrng))
    _write_csv(out / "zoning.csv", list(zoning_rows[0]), zoning_rows)
    _write_csv(out / "parcels.csv", list(parcel_rows[0]), parcel_rows)

    # spurs -------------------------------------------------------------------
    spur_rows = []
    for idx, (name, _, _, size, _) in enumerate(COUNTY_DEFS):
        spur_rows.extend(_county_spurs(name, size, _rng(seed, 200 + idx)))
    _write_csv(out / "spurs.csv", list(spur_rows[0]), spur_rows)

    # hourly series -----------------------------------------------------------
    demand = {
        r: _demand_series(REGION_MEAN_MW[r], _rng(seed, 300 + i))
        for i, r in enumerate(SUBREGIONS)
    }
    _write_series_csv(out / "demand.csv", demand)

    cloud = {s: _rng(seed, 400 + i).beta(1.6, 4.0, 365)
             for i, s in enumerate(("OH", "IN", "WI"))}
    cf_cols = {}
    for idx, row in enumerate(county_rows):
        cf_cols[row["county"]] = _solar_cf_series(
            float(row["target_cf"]), cloud[row["state"]], _rng(seed, 500 + idx)
        )
    _write_series_csv(out / "cf_solar.csv", cf_cols)

    wind_cols = {
        county: _wind_cf_series(0.34, _rng(seed, 600 + i))
        for i, (county, _, _) in enumerate(WIND_SITES)
    }
    _write_series_csv(out / "cf_wind.csv", wind_cols)

    # system tables -----------------------------------------------------------
    county_sub = {name: sub for name, _, sub, _, _ in COUNTY_DEFS}
    wind_rows = [
        {"county": c, "subregion": county_sub[c],
         "max_mw": mw, "cost_per_mw_yr": cost}
        for c, mw, cost in WIND_SITES
    ]
    _write_csv(out / "wind_sites.csv", list(wind_rows[0]), wind_rows)

    fleet_rows = [
        {"subregion": r[0], "tech": r[1], "capacity_mw": r[2],
         "heat_rate": r[3], "fuel_cost": r[4], "vom": r[5],
         "emission_rate": r[6], "must_run": int(r[7])}
        for r in FLEET_ROWS
    ]
    _write_csv(out / "fleet.csv", list(fleet_rows[0]), fleet_rows)

    tech_rows = [
        {"name": r[0], "subregion": r[1], "capex_per_mw": r[2],
         "fom_per_mw_yr": r[3], "var_cost": r[4], "emission_rate": r[5],
         "max_build_mw": r[6], "firm_credit": r[7]}
        for r in NEW_TECH_ROWS
    ]
    _write_csv(out / "new_techs.csv", list(tech_rows[0]), tech_rows)

    line_rows = [
        {"name": r[0], "from_subregion": r[1], "to_subregion": r[2],
         "capacity_mw": r[3], "length_mi": r[4],
         "expansion_cost_per_mw_mi": 0.0, "max_expansion_mw": 0.0}
        for r in LINE_ROWS
    ]
    _write_csv(out / "lines.csv", list(line_rows[0]), line_rows)

    stor_rows = [
        {"subregion": r[0], "power_mw": r[1], "duration_h": r[2],
         "round_trip_eff": r[3], "max_new_mw": 0.0,
         "capex_per_mw": 0.0, "fom_per_mw_yr": 0.0}
        for r in STORAGE_ROWS
    ]
    _write_csv(out / "storage.csv", list(stor_rows[0]), stor_rows)

    scale_lines = "\n".join(
        f'"{y}" = {v}' for y, v in sorted(PERIOD_DEMAND_SCALE.items())
    )
    (out / "system.toml").write_text(
        "[meta]\n"
        f"seed = {seed}\n"
        f"version = {DATASET_VERSION}\n\n"
        "[finance]\n"
        f"rate = {FINANCE_RATE}\n"
        f"years = {FINANCE_YEARS}\n"
        f"itc = {SOLAR_ITC}\n\n"
        "[solar]\n"
        f"capex_per_mw = {SOLAR_CAPEX_PER_MW}\n"
        f"fom_per_mw_yr = {SOLAR_FOM_PER_MW_YR}\n\n"
        "[system]\n"
        f"co2_base = {CO2_BASE_TONS}\n"
        f"reserve_margin = {RESERVE_MARGIN}\n\n"
        "[system.period_demand_scale]\n"
        f"{scale_lines}\n"
    )
    return out


def ensure_dataset(data_dir: Path | str, seed: int = DEFAULT_SEED) -> bool:
    """Generate the dataset unless a matching one is already in place.

    Returns True when files were (re)generated.  A directory holding a
    dataset built from a different seed is refused rather than overwritten.
    """
    out = Path(data_dir)
    manifest = out / "system.toml"
    if manifest.exists():
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib

        with open(manifest, "rb") as fh:
            meta = tomllib.load(fh).get("meta", {})
        if meta.get("seed") == seed and meta.get("version") == DATASET_VERSION:
            return False
        raise ValueError(
            f"{out} holds a dataset for seed {meta.get('seed')} "
            f"(version {meta.get('version')}); refusing to overwrite with "
            f"seed {seed} — pick an empty directory or delete it first"
        )
    generate(out, seed)
    return True
