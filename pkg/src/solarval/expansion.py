"""Multi-period, representative-day capacity-expansion model.

The model sites cumulative solar (per county, priced from the supply
curve), wind, new thermal units, storage, and transmission over a set of
snapshot years, dispatching every representative hour.  Its objective
blends two annual dollar totals:

    minimize  w * system_cost  -  (1 - w) * county_benefit

where the benefit term values cumulative solar capacity at each county's
net value-added per MW-year.  Pure benefit maximization expands solar
without limit, so any run with ``w < 1`` must pin total solar per period;
that guard lives in the problem type itself.

Solar and wind are must-take: their representative-hour output enters the
energy balance directly (scaled by cumulative capacity), and a per-region
spill variable absorbs any surplus.  Dispatchable units, storage and flows
carry hourly decision variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .economics import crf
from .repdays import RepDay, select_rep_days
from .simplex import LPResult, StandardFormLP, WarmStart, solve

HOURS = 24

# Emission-cap trajectory: linear from the anchor year's base level down to
# the target fraction at the target year, held flat afterwards.
CO2_ANCHOR_YEAR = 2020
CO2_TARGET_YEAR = 2040
CO2_TARGET_FRACTION = 0.20

DEFAULT_PERIODS = (2025, 2030, 2035, 2040)
FINANCE_RATE = 0.054
FINANCE_YEARS = 30


def co2_fraction(year: int) -> float:
    """Allowed share of base-year emissions for one snapshot year."""
    span = CO2_TARGET_YEAR - CO2_ANCHOR_YEAR
    frac = 1.0 - (1.0 - CO2_TARGET_FRACTION) * (year - CO2_ANCHOR_YEAR) / span
    return float(min(1.0, max(CO2_TARGET_FRACTION, frac)))


# ---------------------------------------------------------------------------
# System description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FleetUnit:
    """An existing dispatchable block (one row of the fleet table)."""

    subregion: str
    tech: str
    capacity_mw: float
    heat_rate: float            # MMBtu/MWh
    fuel_cost: float            # $/MMBtu
    vom: float = 0.0            # $/MWh
    emission_rate: float = 0.0  # tCO2/MWh
    must_run: bool = False

    def __post_init__(self):
        if self.capacity_mw < 0:
            raise ValueError("fleet capacity must be non-negative")
        if self.emission_rate < 0:
            raise ValueError("emission rate must be non-negative")

    @property
    def var_cost(self) -> float:
        return self.heat_rate * self.fuel_cost + self.vom

    @property
    def key(self) -> str:
        return f"{self.tech}:{self.subregion}"


@dataclass(frozen=True)
class NewTech:
    """A buildable dispatchable option in one subregion."""

    name: str
    subregion: str
    capex_per_mw: float
    fom_per_mw_yr: float
    var_cost: float             # $/MWh
    emission_rate: float = 0.0
    max_build_mw: float = 0.0   # cumulative ceiling
    firm_credit: float = 1.0

    @property
    def key(self) -> str:
        return f"{self.name}:{self.subregion}"


@dataclass(frozen=True)
class Line:
    """A transport-model corridor between two subregions."""

    name: str
    from_subregion: str
    to_subregion: str
    capacity_mw: float
    length_mi: float
    expansion_cost_per_mw_mi: float = 0.0
    max_expansion_mw: float = 0.0

    def __post_init__(self):
        if self.capacity_mw < 0 or self.max_expansion_mw < 0:
            raise ValueError("line capacities must be non-negative")

    @property
    def expandable(self) -> bool:
        return self.max_expansion_mw > 0


@dataclass(frozen=True)
class Storage:
    """Battery fleet in one subregion, optionally expandable."""

    subregion: str
    power_mw: float
    duration_h: float = 4.0
    round_trip_eff: float = 0.85
    max_new_mw: float = 0.0
    capex_per_mw: float = 0.0
    fom_per_mw_yr: float = 0.0

    def __post_init__(self):
        if not 0 < self.round_trip_eff <= 1:
            raise ValueError("round-trip efficiency must lie in (0, 1]")
        if self.duration_h <= 0:
            raise ValueError("storage duration must be positive")

    @property
    def expandable(self) -> bool:
        return self.max_new_mw > 0

    @property
    def leg_eff(self) -> float:
        """Per-leg efficiency; the two legs multiply to the round trip."""
        return float(np.sqrt(self.round_trip_eff))


@dataclass(frozen=True)
class WindAsset:
    """County-level wind option: capacity ceiling, yearly cost, CF series."""

    county: str
    subregion: str
    max_mw: float
    cost_per_mw_yr: float
    cf: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.cf, dtype=float)
        if arr.min(initial=0.0) < 0 or arr.max(initial=0.0) > 1:
            raise ValueError("wind capacity factors must lie in [0, 1]")
        object.__setattr__(self, "cf", arr)


@dataclass(frozen=True)
class SystemData:
    """Everything about the grid that is not a curve: loads, fleet, wires."""

    subregions: tuple[str, ...]
    demand: dict[str, np.ndarray]          # base-year hourly MW per subregion
    county_subregion: dict[str, str]
    fleet: tuple[FleetUnit, ...] = ()
    new_techs: tuple[NewTech, ...] = ()
    lines: tuple[Line, ...] = ()
    storages: tuple[Storage, ...] = ()
    wind: tuple[WindAsset, ...] = ()
    co2_base: float = 0.0                  # t/yr
    reserve_margin: float = 0.15
    period_demand_scale: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.subregions or len(self.subregions) > 24:
            raise ValueError("between 1 and 24 subregions required")
        if len(set(self.subregions)) != len(self.subregions):
            raise ValueError("duplicate subregion names")
        if set(self.demand) != set(self.subregions):
            raise ValueError("demand series must cover every subregion exactly")
        for r, series in self.demand.items():
            arr = np.asarray(series, dtype=float)
            if arr.min(initial=0.0) < 0:
                raise ValueError(f"negative demand in subregion {r}")
        known = set(self.subregions)
        for ln in self.lines:
            if ln.from_subregion not in known or ln.to_subregion not in known:
                raise ValueError(f"line {ln.name} references unknown subregion")
        for u in self.fleet:
            if u.subregion not in known:
                raise ValueError(f"fleet unit {u.key} in unknown subregion")
        for t in self.new_techs:
            if t.subregion not in known:
                raise ValueError(f"tech {t.key} in unknown subregion")
        for s in self.storages:
            if s.subregion not in known:
                raise ValueError(f"storage in unknown subregion {s.subregion}")
        for w in self.wind:
            if w.subregion not in known:
                raise ValueError(f"wind site {w.county} in unknown subregion")
        if self.co2_base < 0:
            raise ValueError("co2_base must be non-negative")

    def demand_scale(self, year: int) -> float:
        return float(self.period_demand_scale.get(year, 1.0))


@dataclass(frozen=True)
class CEProblem:
    """One scenario: objective weight, horizon, and the solar-total pin."""

    weight_cost: float
    periods: tuple[int, ...] = DEFAULT_PERIODS
    fix_total_solar: dict[int, float] | None = None   # cumulative MW per year
    rep_days: tuple[RepDay, ...] = ()
    finance_rate: float = FINANCE_RATE
    finance_years: int = FINANCE_YEARS
    emissions_fraction: tuple[float, ...] | None = None

    def __post_init__(self):
        if not 0.0 <= self.weight_cost <= 1.0:
            raise ValueError("weight_cost must lie in [0, 1]")
        if not self.periods or list(self.periods) != sorted(set(self.periods)):
            raise ValueError("periods must be strictly increasing and non-empty")
        if self.weight_cost < 1.0 and self.fix_total_solar is None:
            raise ValueError(
                "benefit-weighted runs (weight_cost < 1) are unbounded in the "
                "solar direction; supply fix_total_solar per period"
            )
        if self.fix_total_solar is not None:
            missing = [y for y in self.periods if y not in self.fix_total_solar]
            if missing:
                raise ValueError(f"fix_total_solar missing periods {missing}")
            if any(v < 0 for v in self.fix_total_solar.values()):
                raise ValueError("fixed solar totals must be non-negative")
        if self.emissions_fraction is not None and len(
            self.emissions_fraction
        ) != len(self.periods):
            raise ValueError("emissions_fraction must match periods")

    def co2_caps(self, co2_base: float) -> tuple[float, ...]:
        if self.emissions_fraction is not None:
            return tuple(f * co2_base for f in self.emissions_fraction)
        return tuple(co2_fraction(y) * co2_base for y in self.periods)


class CEInfeasible(RuntimeError):
    """Solver did not reach an optimum; carries any unservable row names."""

    def __init__(self, status: str, row_names: tuple[str, ...] = ()):
        detail = f"expansion model ended with status {status!r}"
        if row_names:
            shown = ", ".join(row_names[:8])
            more = "" if len(row_names) <= 8 else f" (+{len(row_names) - 8} more)"
            detail += f"; unservable constraints: {shown}{more}"
        super().__init__(detail)
        self.status = status
        self.row_names = row_names


# ---------------------------------------------------------------------------
# LP assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _SolarSite:
    county: str
    subregion: str
    max_mw: float
    cost: float      # $/MW-yr from the supply curve
    nva: float       # $/MW-yr net value-added
    cf: np.ndarray   # (n_days, 24) representative slices


class _Book:
    """Column registry: bounds, split objective parts, block layout."""

    def __init__(self):
        self.names: list[str] = []
        self.lo: list[float] = []
        self.hi: list[float] = []
        self.cost: list[float] = []
        self.benefit: list[float] = []
        self.em: list[float] = []       # annual tCO2 per unit
        self.period: list[int] = []     # period index, -1 for none
        self.blocks: dict[str, tuple[int, tuple[int, ...]]] = {}

    def var(self, name, lo, hi, cost=0.0, benefit=0.0, em=0.0, period=-1):
        self.names.append(name)
        self.lo.append(lo)
        self.hi.append(hi)
        self.cost.append(cost)
        self.benefit.append(benefit)
        self.em.append(em)
        self.period.append(period)
        return len(self.names) - 1

    def block(self, family: str, shape: tuple[int, ...], start: int):
        count = len(self.names) - start
        if count != int(np.prod(shape)):
            raise AssertionError(f"block {family}: {count} vars vs shape {shape}")
        self.blocks[family] = (start, shape)

    def __len__(self):
        return len(self.names)


class _Rows:
    def __init__(self):
        self.names: list[str] = []
        self.senses: list[str] = []
        self.rhs: list[float] = []
        self.blocks: dict[str, tuple[int, tuple[int, ...]]] = {}

    def row(self, name, sense, rhs):
        self.names.append(name)
        self.senses.append(sense)
        self.rhs.append(rhs)
        return len(self.names) - 1

    def block(self, family, shape, start):
        count = len(self.names) - start
        if count != int(np.prod(shape)):
            raise AssertionError(f"row block {family}: {count} vs {shape}")
        self.blocks[family] = (start, shape)

    def __len__(self):
        return len(self.names)


@dataclass
class CEModel:
    """A built scenario: the LP plus everything needed to read it back."""

    problem: CEProblem
    sys: SystemData
    lp: StandardFormLP
    rep_days: tuple[RepDay, ...]
    sites: tuple[_SolarSite, ...]
    cost_vec: np.ndarray
    benefit_vec: np.ndarray
    em_vec: np.ndarray
    col_period: np.ndarray
    col_blocks: dict[str, tuple[int, tuple[int, ...]]]
    row_blocks: dict[str, tuple[int, tuple[int, ...]]]
    mustrun_em: float
    fleet_disp: tuple[FleetUnit, ...]

    def col(self, family: str, x: np.ndarray) -> np.ndarray:
        start, shape = self.col_blocks[family]
        size = int(np.prod(shape))
        return x[start:start + size].reshape(shape)


def _slices(series: np.ndarray, days: tuple[RepDay, ...]) -> np.ndarray:
    """Representative-day slices of an hourly series: (n_days, 24)."""
    arr = np.asarray(series, dtype=float)
    return np.stack([arr[d.day * HOURS:(d.day + 1) * HOURS] for d in days])


def default_rep_days(sys: SystemData, supply, wind=()) -> tuple[RepDay, ...]:
    """Select rep days from total demand and capacity-weighted mean CF."""
    total = sum(np.asarray(sys.demand[r], dtype=float) for r in sys.subregions)
    cf_s = None
    caps = np.array([p.capacity_mw for p in supply])
    if len(supply) and caps.sum() > 0:
        stackable = [
            np.asarray(p.cf_series, dtype=float)
            for p in supply
            if p.cf_series is not None
        ]
        if len(stackable) == len(supply):
            cf_s = np.average(np.stack(stackable), axis=0, weights=caps)
    cf_w = None
    wcaps = np.array([w.max_mw for w in wind])
    if len(wind) and wcaps.sum() > 0:
        cf_w = np.average(
            np.stack([np.asarray(w.cf, dtype=float) for w in wind]),
            axis=0,
            weights=wcaps,
        )
    return select_rep_days(total, cf_s, cf_w)


def build_lp(problem: CEProblem, sys: SystemData, supply, benefit) -> CEModel:
    """Assemble the scenario LP.

    ``supply`` and ``benefit`` are the curve points; every supply county
    must appear in ``sys.county_subregion`` and in the benefit list, and
    must carry an hourly capacity-factor series.
    """
    nva = {b.county: b.net_va_per_mw_yr for b in benefit}
    rep_days = problem.rep_days or default_rep_days(sys, supply, sys.wind)
    nD = len(rep_days)
    wd = np.array([d.weight for d in rep_days])

    sites = []
    for p in supply:
        if p.county not in sys.county_subregion:
            raise ValueError(f"county {p.county!r} has no subregion mapping")
        if p.county not in nva:
            raise ValueError(f"county {p.county!r} has no benefit point")
        if p.cf_series is None:
            raise ValueError(f"county {p.county!r} lacks a capacity-factor series")
        sites.append(
            _SolarSite(
                county=p.county,
                subregion=sys.county_subregion[p.county],
                max_mw=p.capacity_mw,
                cost=p.annualized_cost,
                nva=nva[p.county],
                cf=_slices(p.cf_series, rep_days),
            )
        )
    sites = tuple(sites)

    years = problem.periods
    nP = len(years)
    regions = sys.subregions
    fleet_disp = tuple(u for u in sys.fleet if not u.must_run and u.capacity_mw > 0)
    mustrun = tuple(u for u in sys.fleet if u.must_run and u.capacity_mw > 0)
    techs = sys.new_techs
    lines = sys.lines
    stors = sys.storages
    winds = sys.wind
    crf_fin = crf(problem.finance_rate, problem.finance_years)

    dem = {r: _slices(sys.demand[r], rep_days) for r in regions}
    wcf = {w.county: _slices(w.cf, rep_days) for w in winds}

    # peak representative slice of total demand (scale-invariant argmax)
    total = sum(dem[r] for r in regions)
    pk_d, pk_h = np.unravel_index(int(np.argmax(total)), total.shape)
    mustrun_cap = sum(u.capacity_mw for u in mustrun)
    mustrun_cap_by_r = {
        r: sum(u.capacity_mw for u in mustrun if u.subregion == r) for r in regions
    }
    mustrun_em = sum(u.emission_rate * u.capacity_mw * 8760.0 for u in mustrun)

    book = _Book()

    def add_block(family, shape, maker):
        start = len(book)
        maker()
        book.block(family, shape, start)

    # --- cumulative capacity ------------------------------------------------
    def mk_sol():
        for s in sites:
            for ip, y in enumerate(years):
                book.var(
                    f"sol[{s.county}][{y}]", 0.0, s.max_mw,
                    cost=s.cost, benefit=s.nva, period=ip,
                )
    add_block("sol", (len(sites), nP), mk_sol)

    def mk_wind():
        for w in winds:
            for ip, y in enumerate(years):
                book.var(
                    f"wnd[{w.county}][{y}]", 0.0, w.max_mw,
                    cost=w.cost_per_mw_yr, period=ip,
                )
    add_block("wind", (len(winds), nP), mk_wind)

    def mk_new():
        for t in techs:
            yearly = crf_fin * t.capex_per_mw + t.fom_per_mw_yr
            for ip, y in enumerate(years):
                book.var(f"new[{t.key}][{y}]", 0.0, t.max_build_mw,
                         cost=yearly, period=ip)
    add_block("new", (len(techs), nP), mk_new)

    xlines = tuple(ln for ln in lines if ln.expandable)

    def mk_linex():
        for ln in xlines:
            yearly = crf_fin * ln.expansion_cost_per_mw_mi * ln.length_mi
            for ip, y in enumerate(years):
                book.var(f"wire[{ln.name}][{y}]", 0.0, ln.max_expansion_mw,
                         cost=yearly, period=ip)
    add_block("line_x", (len(xlines), nP), mk_linex)

    xstors = tuple(s for s in stors if s.expandable)

    def mk_storx():
        for s in xstors:
            yearly = crf_fin * s.capex_per_mw + s.fom_per_mw_yr
            for ip, y in enumerate(years):
                book.var(f"bat[{s.subregion}][{y}]", 0.0, s.max_new_mw,
                         cost=yearly, period=ip)
    add_block("stor_x", (len(xstors), nP), mk_storx)

    # --- hourly decisions ----------------------------------------------------
    def mk_gfleet():
        for u in fleet_disp:
            for ip, y in enumerate(years):
                for d in range(nD):
                    for h in range(HOURS):
                        book.var(
                            f"g[{u.key}][{y}][{d}.{h}]", 0.0, u.capacity_mw,
                            cost=u.var_cost * wd[d],
                            em=u.emission_rate * wd[d],
                            period=ip,
                        )
    add_block("g_fleet", (len(fleet_disp), nP, nD, HOURS), mk_gfleet)

    def mk_gnew():
        for t in techs:
            for ip, y in enumerate(years):
                for d in range(nD):
                    for h in range(HOURS):
                        book.var(
                            f"gn[{t.key}][{y}][{d}.{h}]", 0.0, t.max_build_mw,
                            cost=t.var_cost * wd[d],
                            em=t.emission_rate * wd[d],
                            period=ip,
                        )
    add_block("g_new", (len(techs), nP, nD, HOURS), mk_gnew)

    def mk_flow():
        for ln in lines:
            span = ln.capacity_mw + ln.max_expansion_mw
            for ip, y in enumerate(years):
                for d in range(nD):
                    for h in range(HOURS):
                        book.var(f"f[{ln.name}][{y}][{d}.{h}]", -span, span,
                                 period=ip)
    add_block("flow", (len(lines), nP, nD, HOURS), mk_flow)

    def mk_stor(kind):
        def mk():
            for s in stors:
                power = s.power_mw + s.max_new_mw
                cap = power if kind != "soc" else power * s.duration_h
                for ip, y in enumerate(years):
                    for d in range(nD):
                        for h in range(HOURS):
                            book.var(
                                f"{kind}[{s.subregion}][{y}][{d}.{h}]",
                                0.0, cap, period=ip,
                            )
        return mk

    add_block("chg", (len(stors), nP, nD, HOURS), mk_stor("chg"))
    add_block("dis", (len(stors), nP, nD, HOURS), mk_stor("dis"))
    add_block("soc", (len(stors), nP, nD, HOURS), mk_stor("soc"))

    def mk_spill():
        for r in regions:
            for ip, y in enumerate(years):
                for d in range(nD):
                    for h in range(HOURS):
                        book.var(f"spl[{r}][{y}][{d}.{h}]", 0.0, np.inf,
                                 period=ip)
    add_block("spill", (len(regions), nP, nD, HOURS), mk_spill)

    def cidx(family, *pos):
        start, shape = book.blocks[family]
        return start + int(np.ravel_multi_index(pos, shape))

    rows = _Rows()
    ent_i: list[int] = []
    ent_j: list[int] = []
    ent_v: list[float] = []

    def put(i, j, v):
        if v != 0.0:
            ent_i.append(i)
            ent_j.append(j)
            ent_v.append(float(v))

    # --- energy balance ------------------------------------------------------
    start = len(rows)
    reg_sites = {r: [k for k, s in enumerate(sites) if s.subregion == r]
                 for r in regions}
    reg_winds = {r: [k for k, w in enumerate(winds) if w.subregion == r]
                 for r in regions}
    reg_units = {r: [k for k, u in enumerate(fleet_disp) if u.subregion == r]
                 for r in regions}
    reg_techs = {r: [k for k, t in enumerate(techs) if t.subregion == r]
                 for r in regions}
    reg_stors = {r: [k for k, s in enumerate(stors) if s.subregion == r]
                 for r in regions}
    for ir, r in enumerate(regions):
        for ip, y in enumerate(years):
            scale = sys.demand_scale(y)
            for d in range(nD):
                for h in range(HOURS):
                    i = rows.row(
                        f"bal[{r}][{y}][{d}.{h}]",
                        "=",
                        dem[r][d, h] * scale - mustrun_cap_by_r[r],
                    )
                    for k in reg_units[r]:
                        put(i, cidx("g_fleet", k, ip, d, h), 1.0)
                    for k in reg_techs[r]:
                        put(i, cidx("g_new", k, ip, d, h), 1.0)
                    for k in reg_sites[r]:
                        put(i, cidx("sol", k, ip), sites[k].cf[d, h])
                    for k in reg_winds[r]:
                        put(i, cidx("wind", k, ip), wcf[winds[k].county][d, h])
                    for k, ln in enumerate(lines):
                        if ln.to_subregion == r:
                            put(i, cidx("flow", k, ip, d, h), 1.0)
                        elif ln.from_subregion == r:
                            put(i, cidx("flow", k, ip, d, h), -1.0)
                    for k in reg_stors[r]:
                        put(i, cidx("chg", k, ip, d, h), -1.0)
                        put(i, cidx("dis", k, ip, d, h), 1.0)
                    put(i, cidx("spill", ir, ip, d, h), -1.0)
    rows.block("bal", (len(regions), nP, nD, HOURS), start)

    # --- new-build dispatch within cumulative capacity -----------------------
    start = len(rows)
    for k, t in enumerate(techs):
        for ip, y in enumerate(years):
            for d in range(nD):
                for h in range(HOURS):
                    i = rows.row(f"cap[{t.key}][{y}][{d}.{h}]", "<", 0.0)
                    put(i, cidx("g_new", k, ip, d, h), 1.0)
                    put(i, cidx("new", k, ip), -1.0)
    rows.block("cap", (len(techs), nP, nD, HOURS), start)

    # --- expandable corridors -----------------------------------------------
    start = len(rows)
    xline_pos = [k for k, ln in enumerate(lines) if ln.expandable]
    for kx, k in enumerate(xline_pos):
        ln = lines[k]
        for ip, y in enumerate(years):
            for d in range(nD):
                for h in range(HOURS):
                    i = rows.row(f"whi[{ln.name}][{y}][{d}.{h}]", "<",
                                 ln.capacity_mw)
                    put(i, cidx("flow", k, ip, d, h), 1.0)
                    put(i, cidx("line_x", kx, ip), -1.0)
                    i = rows.row(f"wlo[{ln.name}][{y}][{d}.{h}]", "<",
                                 ln.capacity_mw)
                    put(i, cidx("flow", k, ip, d, h), -1.0)
                    put(i, cidx("line_x", kx, ip), -1.0)
    rows.block("wire", (len(xlines), nP, nD, HOURS, 2), start)

    # --- expandable storage ratings -------------------------------------------
    start = len(rows)
    xstor_pos = [k for k, s in enumerate(stors) if s.expandable]
    for kx, k in enumerate(xstor_pos):
        s = stors[k]
        for ip, y in enumerate(years):
            for d in range(nD):
                for h in range(HOURS):
                    for kind, dur in (("chg", 1.0), ("dis", 1.0),
                                      ("soc", s.duration_h)):
                        i = rows.row(
                            f"b{kind}[{s.subregion}][{y}][{d}.{h}]", "<",
                            s.power_mw * dur,
                        )
                        put(i, cidx(kind, k, ip, d, h), 1.0)
                        put(i, cidx("stor_x", kx, ip), -dur)
    rows.block("brate", (len(xstors), nP, nD, HOURS, 3), start)

    # --- state of charge (cyclic within each representative day) -------------
    start = len(rows)
    for k, s in enumerate(stors):
        eff = s.leg_eff
        for ip, y in enumerate(years):
            for d in range(nD):
                for h in range(HOURS):
                    prev = (h - 1) % HOURS
                    i = rows.row(f"soc[{s.subregion}][{y}][{d}.{h}]", "=", 0.0)
                    put(i, cidx("soc", k, ip, d, h), 1.0)
                    put(i, cidx("soc", k, ip, d, prev), -1.0)
                    put(i, cidx("chg", k, ip, d, h), -eff)
                    put(i, cidx("dis", k, ip, d, h), 1.0 / eff)
    rows.block("soc", (len(stors), nP, nD, HOURS), start)

    # --- capacity carries forward --------------------------------------------
    start = len(rows)
    n_carry = 0
    for family, count in (
        ("sol", len(sites)), ("wind", len(winds)), ("new", len(techs)),
        ("line_x", len(xlines)), ("stor_x", len(xstors)),
    ):
        for k in range(count):
            for ip in range(1, nP):
                i = rows.row(f"carry[{book.names[cidx(family, k, ip)]}]", ">", 0.0)
                put(i, cidx(family, k, ip), 1.0)
                put(i, cidx(family, k, ip - 1), -1.0)
                n_carry += 1
    rows.block("carry", (n_carry,), start)

    # --- annual emissions ------------------------------------------------------
    start = len(rows)
    caps = problem.co2_caps(sys.co2_base)
    for ip, y in enumerate(years):
        i = rows.row(f"co2[{y}]", "<", caps[ip] - mustrun_em)
        for k, u in enumerate(fleet_disp):
            if u.emission_rate == 0.0:
                continue
            for d in range(nD):
                for h in range(HOURS):
                    put(i, cidx("g_fleet", k, ip, d, h),
                        u.emission_rate * wd[d])
        for k, t in enumerate(techs):
            if t.emission_rate == 0.0:
                continue
            for d in range(nD):
                for h in range(HOURS):
                    put(i, cidx("g_new", k, ip, d, h), t.emission_rate * wd[d])
    rows.block("co2", (nP,), start)

    # --- planning reserve -------------------------------------------------------
    start = len(rows)
    firm_exist = sum(u.capacity_mw for u in fleet_disp) + mustrun_cap
    firm_stor = sum(s.power_mw for s in stors)
    for ip, y in enumerate(years):
        peak = float(total[pk_d, pk_h]) * sys.demand_scale(y)
        rhs = (1.0 + sys.reserve_margin) * peak - firm_exist - firm_stor
        i = rows.row(f"resv[{y}]", ">", rhs)
        for k, t in enumerate(techs):
            put(i, cidx("new", k, ip), t.firm_credit)
        for k, s in enumerate(sites):
            put(i, cidx("sol", k, ip), s.cf[pk_d, pk_h])
        for k, w in enumerate(winds):
            put(i, cidx("wind", k, ip), wcf[w.county][pk_d, pk_h])
        for kx in range(len(xstors)):
            put(i, cidx("stor_x", kx, ip), 1.0)
    rows.block("resv", (nP,), start)

    # --- total-solar pin (always present so sweeps share one matrix) ----------
    start = len(rows)
    loose = sum(s.max_mw for s in sites) + 1.0
    for ip, y in enumerate(years):
        if problem.fix_total_solar is None:
            i = rows.row(f"fixsol[{y}]", "<", loose)
        else:
            i = rows.row(f"fixsol[{y}]", "=", problem.fix_total_solar[y])
        for k in range(len(sites)):
            put(i, cidx("sol", k, ip), 1.0)
    rows.block("fixsol", (nP,), start)

    # --- assemble --------------------------------------------------------------
    n, m = len(book), len(rows)
    A = sparse.coo_matrix(
        (ent_v, (ent_i, ent_j)), shape=(m, n)
    ).tocsr()
    cost_vec = np.array(book.cost)
    benefit_vec = np.array(book.benefit)
    w = problem.weight_cost
    lp = StandardFormLP(
        c=w * cost_vec - (1.0 - w) * benefit_vec,
        A=A,
        senses="".join(rows.senses),
        b=np.array(rows.rhs),
        lo=np.array(book.lo),
        hi=np.array(book.hi),
        var_names=tuple(book.names),
        row_names=tuple(rows.names),
        name=f"ce_w{w:g}",
    )
    return CEModel(
        problem=problem,
        sys=sys,
        lp=lp,
        rep_days=tuple(rep_days),
        sites=sites,
        cost_vec=cost_vec,
        benefit_vec=benefit_vec,
        em_vec=np.array(book.em),
        col_period=np.array(book.period),
        col_blocks=dict(book.blocks),
        row_blocks=dict(rows.blocks),
        mustrun_em=mustrun_em,
        fleet_disp=fleet_disp,
    )


# ---------------------------------------------------------------------------
# Solution interpretation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CESolution:
    """Named view of one optimal expansion plan."""

    status: str
    objective: float
    cost_component: float
    benefit_component: float
    solar_mw: dict[tuple[str, int], float]      # (county, year) -> cumulative
    wind_mw: dict[tuple[str, int], float]
    new_mw: dict[tuple[str, int], float]        # (tech:subregion, year)
    line_mw: dict[tuple[str, int], float]
    storage_mw: dict[tuple[str, int], float]
    total_solar: dict[int, float]
    emissions: dict[int, float]
    binding: tuple[str, ...]
    residual: float
    iterations: int
    warm: WarmStart | None = None


def interpret(result: LPResult, model: CEModel, tol: float = 1e-6) -> CESolution:
    """Map a solver result back to named quantities and verify feasibility."""
    if result.status != "optimal":
        names = tuple(model.lp.row_names[i] for i in result.stuck_rows)
        raise CEInfeasible(result.status, names)

    x = result.x
    lp = model.lp
    years = model.problem.periods

    act = lp.A @ x
    scale = 1.0 + np.abs(lp.b)
    over = np.zeros(lp.m)
    for i, s in enumerate(lp.senses):
        if s == "=":
            over[i] = abs(act[i] - lp.b[i])
        elif s == "<":
            over[i] = max(0.0, act[i] - lp.b[i])
        else:
            over[i] = max(0.0, lp.b[i] - act[i])
    residual = float(np.max(over / scale, initial=0.0))
    if residual > tol:
        raise CEInfeasible(f"optimal-with-residual-{residual:.2e}")

    slack_rel = np.abs(act - lp.b) / scale
    binding = tuple(
        lp.row_names[i]
        for i in range(lp.m)
        if lp.senses[i] != "=" and slack_rel[i] <= tol
    )

    def by_period(family, labels):
        out = {}
        if family not in model.col_blocks:
            return out
        block = model.col(family, x)
        for k, label in enumerate(labels):
            for ip, y in enumerate(years):
                out[(label, y)] = float(block[k, ip])
        return out

    sol = model.col("sol", x)
    total_solar = {
        y: float(sol[:, ip].sum()) for ip, y in enumerate(years)
    } if sol.size else {y: 0.0 for y in years}

    emissions = {}
    for ip, y in enumerate(years):
        mask = model.col_period == ip
        emissions[y] = float(model.em_vec[mask] @ x[mask]) + model.mustrun_em

    return CESolution(
        status=result.status,
        objective=float(result.objective),
        cost_component=float(model.cost_vec @ x),
        benefit_component=float(model.benefit_vec @ x),
        solar_mw=by_period("sol", [s.county for s in model.sites]),
        wind_mw=by_period("wind", [w.county for w in model.sys.wind]),
        new_mw=by_period("new", [t.key for t in model.sys.new_techs]),
        line_mw=by_period(
            "line_x", [ln.name for ln in model.sys.lines if ln.expandable]
        ),
        storage_mw=by_period(
            "stor_x", [s.subregion for s in model.sys.storages if s.expandable]
        ),
        total_solar=total_solar,
        emissions=emissions,
        binding=binding,
        residual=residual,
        iterations=result.iterations,
        warm=result.warm,
    )


def solve_model(
    model: CEModel,
    warm: WarmStart | None = None,
    tol: float = 1e-9,
    max_iters: int = 200_000,
) -> CESolution:
    """Solve a built scenario and return its interpreted solution."""
    result = solve(model.lp, tol=tol, max_iters=max_iters, warm=warm)
    return interpret(result, model)
