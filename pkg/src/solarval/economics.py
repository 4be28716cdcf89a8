"""Lifecycle net-economic-impact model for utility-scale PV projects.

A project touches its host county's economy in three phases -- installation,
operations & maintenance, and decommissioning -- plus two induced channels
(landowner lease income and local property-tax revenue) and one offset
(displaced agricultural production).  Each phase's expenditures are split
across commodity categories, reduced to the locally captured share, and pushed
through county-specific Type-II input-output multipliers to produce output,
earnings, employment, and value-added effects.  The headline statistic is
annualized net value-added per MW of nameplate AC capacity, which feeds the
marginal-benefit curves used by the expansion model.

All dollar figures are constant dollars; the engine applies no inflation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

# ---------------------------------------------------------------------------
# Benchmark unit costs
# ---------------------------------------------------------------------------

INSTALL_COST_PER_W_DC = 1.262        # $/W_dc, single-axis tracking, utility scale
OM_COST_PER_KW_DC_YR = 21.690        # $/kW_dc-yr, lifetime-average benchmark
DECOM_COST_PER_MW_DC = 41_969.0      # $/MW_dc, teardown and site restoration

DEFAULT_LEASE_RATE = 580.0           # $/acre-yr paid to host landowners
DEFAULT_TAX_DISCOUNT_RATE = 0.075    # discount rate used for tax-revenue NPVs
OM_ESCALATION_RATE = 0.05            # per-yr slope of the O&M cost ramp

# Reserved multiplier-row names for the induced channels and the ag offset.
ROW_HOUSEHOLD = "household_spending"
ROW_GOVERNMENT = "government_spending"
ROW_AGRICULTURE = "agriculture"

# O&M categories that are *not* industry purchases: lease income and taxes are
# modeled through the induced household/government rows instead (their rows
# below still carry the capture rates those channels use).
OM_INDUCED_CATEGORIES = ("Land Lease", "Taxes")


# ---------------------------------------------------------------------------
# Expenditure profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Category:
    """One expenditure category: its share of phase cost and local capture."""

    name: str
    share: float          # fraction of the phase total, shares sum to 1
    local_capture: float  # fraction of the category retained locally, in [0,1]


@dataclass(frozen=True)
class ExpenditureProfile:
    """Ordered category breakdown of one project phase's spending."""

    phase: str
    categories: tuple[Category, ...]
    total_unit_cost: float
    unit: str  # "$/W_dc" | "$/kW_dc-yr" | "$/MW_dc"

    def __post_init__(self):
        total = sum(c.share for c in self.categories)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(
                f"{self.phase} profile shares sum to {total:.12f}, expected 1.0"
            )
        for c in self.categories:
            if not 0.0 <= c.local_capture <= 1.0:
                raise ValueError(
                    f"{self.phase}/{c.name}: local capture {c.local_capture} "
                    "outside [0, 1]"
                )
            if c.share < 0.0:
                raise ValueError(f"{self.phase}/{c.name}: negative share")

    def capture(self, name: str) -> float:
        for c in self.categories:
            if c.name == name:
                return c.local_capture
        raise KeyError(f"no category named {name!r} in {self.phase} profile")

    def gross_direct(self, phase_total: float) -> dict[str, float]:
        """Dollar spend per category before any local-capture reduction."""
        return {c.name: phase_total * c.share for c in self.categories}

    def local_direct(self, phase_total: float) -> dict[str, float]:
        """Locally captured dollars per category."""
        return {
            c.name: phase_total * c.share * c.local_capture
            for c in self.categories
        }


def _cats(rows) -> tuple[Category, ...]:
    return tuple(Category(n, s, c) for n, s, c in rows)


# Installation cost breakdown (shares of the $1.262/W_dc total) with local
# purchase percentages.  Capture rates group by commodity family: EPC-type
# services 25%, transmission/interconnection work 65%, taxes and fees 80%,
# non-residential construction labor 100%, electrical components 15%,
# structures 25%, contingency and modules 0% (contingency is excluded from
# impact assessment a priori; modules are imported).
INSTALLATION_PROFILE = ExpenditureProfile(
    phase="installation",
    unit="$/W_dc",
    total_unit_cost=INSTALL_COST_PER_W_DC,
    categories=_cats([
        ("EPC Margins",                 0.045, 0.25),
        ("Contingency",                 0.028, 0.00),
        ("Developer Overhead",          0.022, 0.25),
        ("Transmission Line",           0.011, 0.65),
        ("Interconnection Fee",         0.028, 0.65),
        ("Permitting Fee",              0.011, 0.80),
        ("Sales Tax",                   0.045, 0.80),
        ("EPC Overhead",                0.056, 0.25),
        ("Install Labor & Equipment",   0.124, 1.00),
        ("Electrical BOS",              0.079, 0.15),
        ("Structural BOS",              0.135, 0.25),
        ("Inverter",                    0.045, 0.15),
        ("PV Modules",                  0.371, 0.00),
    ]),
)

# Annual O&M budget, $/kW_dc-yr.  Dollar figures are the benchmark-year
# values; shares are derived.  Administrative and monitoring functions are
# provided remotely (0% capture); grounds services are fully local.
_OM_DOLLARS = [
    # (category, $/kW_dc-yr, local capture)
    ("Administrator",              2.254, 0.00),
    ("Cleaner",                    2.015, 0.75),
    ("Inverter specialist",        0.004, 0.25),
    ("Inspector",                  2.443, 0.00),
    ("Journeyman electrician",     1.016, 0.50),
    ("PV module/array specialist", 2.585, 0.20),
    ("Network/IT",                 0.001, 0.00),
    ("Master electrician",         0.475, 0.25),
    ("Mechanic",                   0.239, 0.25),
    ("Pest control",               0.044, 1.00),
    ("Structural engineer",        0.000, 0.00),
    ("Mower/Trimmer",              1.623, 1.00),
    ("Utilities locator",          0.005, 0.00),
    ("Land Lease",                 4.406, 0.75),
    ("Taxes",                      4.580, 0.80),
]

OM_PROFILE = ExpenditureProfile(
    phase="om",
    unit="$/kW_dc-yr",
    total_unit_cost=OM_COST_PER_KW_DC_YR,
    categories=_cats(
        [(n, d / OM_COST_PER_KW_DC_YR, c) for n, d, c in _OM_DOLLARS]
    ),
)

# Decommissioning share breakdown.  Captures mirror the installation-phase
# commodity families: electrical removal work follows the electrical-
# components rate (15%); dismantling, hauling, grading and seeding are
# construction-like services assumed fully local.
DECOMMISSIONING_PROFILE = ExpenditureProfile(
    phase="decommissioning",
    unit="$/MW_dc",
    total_unit_cost=DECOM_COST_PER_MW_DC,
    categories=_cats([
        ("Remove Rack Wiring",          0.041, 0.15),
        ("Remove Panels",               0.041, 1.00),
        ("Dismantle Racks",             0.205, 1.00),
        ("Remove Electrical Equipment", 0.031, 0.15),
        ("Remove Concrete Pads",        0.025, 1.00),
        ("Remove Racks",                0.130, 1.00),
        ("Remove Cable",                0.108, 0.15),
        ("Remove Ground Screws and Power Poles", 0.230, 1.00),
        ("Remove Fence",                0.082, 1.00),
        ("Grading",                     0.066, 1.00),
        ("Seed Disturbed Areas",        0.004, 1.00),
        ("Truck to Recycling Center",   0.037, 1.00),
    ]),
)


# ---------------------------------------------------------------------------
# Project specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectSpec:
    """Physical and temporal parameters of one PV project.

    ``capacity_factor`` and ``downtime`` are carried as validated metadata of
    the project profile; hourly production enters the expansion model through
    delivered-AC capacity-factor series, so they are not re-applied here.
    """

    nameplate_ac: float                 # MW_ac
    inverter_load_ratio: float = 1.25   # MW_dc per MW_ac
    capacity_factor: float = 0.201
    downtime: float = 0.10
    life_years: int = 30                # 25 or 30
    install_months: int = 18
    decommission_months: int = 9
    acres_per_mw_ac: float = 10.0
    panel_acre_share: float = 0.60      # fraction of project acres under panels
    extra_ag_acres_per_mw: float = 2.0  # access roads and mandated offsets

    def __post_init__(self):
        if not self.nameplate_ac > 0:
            raise ValueError("nameplate_ac must be positive")
        if not 1.0 <= self.inverter_load_ratio <= 1.6:
            raise ValueError("inverter_load_ratio outside [1.0, 1.6]")
        if not 0.0 < self.capacity_factor < 1.0:
            raise ValueError("capacity_factor outside (0, 1)")
        if not 0.0 <= self.downtime < 1.0:
            raise ValueError("downtime outside [0, 1)")
        if self.life_years not in (25, 30):
            raise ValueError("life_years must be 25 or 30")
        if self.install_months <= 0 or self.decommission_months <= 0:
            raise ValueError("phase durations must be positive")
        if self.acres_per_mw_ac <= 0:
            raise ValueError("acres_per_mw_ac must be positive")
        if not 0.0 <= self.panel_acre_share <= 1.0:
            raise ValueError("panel_acre_share outside [0, 1]")
        if self.extra_ag_acres_per_mw < 0:
            raise ValueError("extra_ag_acres_per_mw must be non-negative")

    @property
    def mw_dc(self) -> float:
        return self.nameplate_ac * self.inverter_load_ratio

    @property
    def project_acres(self) -> float:
        return self.nameplate_ac * self.acres_per_mw_ac

    @property
    def displaced_ag_acres(self) -> float:
        # Everything under panels plus the per-MW access/offset allowance.
        per_mw = self.acres_per_mw_ac * self.panel_acre_share + self.extra_ag_acres_per_mw
        return self.nameplate_ac * per_mw

    @property
    def install_years(self) -> int:
        return math.ceil(self.install_months / 12)

    @property
    def decommission_years(self) -> int:
        return math.ceil(self.decommission_months / 12)

    @property
    def total_years(self) -> int:
        return self.install_years + self.life_years + self.decommission_years


def derive_project_geometry(spec: ProjectSpec) -> tuple[float, float, float]:
    """Return (MW_dc, project acres, displaced agricultural acres)."""
    return spec.mw_dc, spec.project_acres, spec.displaced_ag_acres


# ---------------------------------------------------------------------------
# Phase direct expenditures
# ---------------------------------------------------------------------------

def installation_direct(
    spec: ProjectSpec, profile: ExpenditureProfile = INSTALLATION_PROFILE
) -> dict[str, float]:
    """Locally captured installation dollars by category for the whole phase."""
    total = spec.mw_dc * 1e6 * profile.total_unit_cost  # $/W_dc on W_dc
    return profile.local_direct(total)


def om_schedule(
    spec: ProjectSpec,
    profile: ExpenditureProfile = OM_PROFILE,
    escalation_rate: float = OM_ESCALATION_RATE,
) -> np.ndarray:
    """Total (gross) O&M dollars for each operating year.

    Equipment ages, so annual costs ramp linearly: the year-over-year step is
    ``escalation_rate`` times the mid-life value, and the ramp is centered at
    t = (life+1)/2 so the lifetime mean equals the benchmark exactly.
    """
    life = spec.life_years
    benchmark = profile.total_unit_cost * spec.mw_dc * 1000.0  # $/kW on kW_dc
    center = (life + 1) / 2.0
    t = np.arange(1, life + 1, dtype=float)
    scale = 1.0 + escalation_rate * (t - center)
    if scale[0] <= 0.0:
        raise ValueError(
            "O&M ramp produces a non-positive first-year cost "
            f"(life={life}, escalation={escalation_rate})"
        )
    return benchmark * scale


def decommission_direct(
    spec: ProjectSpec, profile: ExpenditureProfile = DECOMMISSIONING_PROFILE
) -> dict[str, float]:
    """Locally captured decommissioning dollars by category."""
    total = spec.mw_dc * profile.total_unit_cost  # $/MW_dc
    return profile.local_direct(total)


# ---------------------------------------------------------------------------
# Taxes and lease income
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaxSchedule:
    """State property-tax treatment of utility-scale PV, per MW_ac nameplate.

    ``flat_pilot`` pays ``year1_per_mw`` every operating year (payment in lieu
    of taxes).  ``declining`` follows depreciation: payments shrink by
    ``decline_rate`` per year (a negative rate escalates instead; some states'
    assessment rules back-load the liability).
    """

    state: str
    year1_per_mw: float
    kind: str = "flat_pilot"        # "flat_pilot" | "declining"
    decline_rate: float = 0.0
    discount_rate: float = DEFAULT_TAX_DISCOUNT_RATE

    def __post_init__(self):
        if self.kind not in ("flat_pilot", "declining"):
            raise ValueError(f"unknown tax schedule kind {self.kind!r}")
        if self.year1_per_mw < 0:
            raise ValueError("year1_per_mw must be non-negative")
        if self.decline_rate >= 1.0:
            raise ValueError("decline_rate must be below 1.0")
        if self.discount_rate <= 0.0:
            raise ValueError("discount_rate must be positive")

    def payment(self, year: int) -> float:
        """$/MW_ac owed in operating year ``year`` (1-based)."""
        if year < 1:
            raise ValueError("operating years are 1-based")
        if self.kind == "flat_pilot":
            return self.year1_per_mw
        return self.year1_per_mw * (1.0 - self.decline_rate) ** (year - 1)

    def payments(self, life_years: int) -> np.ndarray:
        return np.array([self.payment(t) for t in range(1, life_years + 1)])

    def npv(self, life_years: int) -> float:
        """Present value per MW_ac of the payment stream at discount_rate."""
        t = np.arange(1, life_years + 1)
        return float(np.sum(self.payments(life_years) / (1 + self.discount_rate) ** t))


def fit_decline_rate(
    year1_per_mw: float,
    npv_target: float,
    discount_rate: float = DEFAULT_TAX_DISCOUNT_RATE,
    life_years: int = 30,
    tol: float = 1e-10,
) -> float:
    """Solve for the declining-balance rate reproducing a target NPV.

    NPV is strictly decreasing in the decline rate, so bisection on
    d in [-0.5, 0.9999] suffices.  Rates below zero mean the payment stream
    escalates; that is required where the target NPV exceeds the flat-annuity
    value of the year-1 payment.
    """
    if year1_per_mw <= 0:
        raise ValueError("year1_per_mw must be positive to fit a schedule")

    def npv_of(d: float) -> float:
        return TaxSchedule(
            "fit", year1_per_mw, "declining", d, discount_rate
        ).npv(life_years)

    lo, hi = -0.5, 0.9999
    if not (npv_of(hi) <= npv_target <= npv_of(lo)):
        raise ValueError(
            f"target NPV {npv_target} not reachable from year-1 payment "
            f"{year1_per_mw} with decline rates in [{lo}, {hi}]"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if npv_of(mid) > npv_target:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def lease_and_tax_induced(
    spec: ProjectSpec,
    lease_rate: float = DEFAULT_LEASE_RATE,
    tax: TaxSchedule | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-year (household, government) direct dollars over the full timeline.

    Lease payments run through every year of every phase; property taxes
    accrue during the operating years only.  Both arrays span
    ``spec.total_years`` year slots (installation first, then operations,
    then decommissioning).
    """
    n = spec.total_years
    lease = np.full(n, spec.project_acres * lease_rate)
    taxes = np.zeros(n)
    if tax is not None:
        start = spec.install_years
        for t in range(1, spec.life_years + 1):
            taxes[start + t - 1] = spec.nameplate_ac * tax.payment(t)
    return lease, taxes


# ---------------------------------------------------------------------------
# Agricultural offsets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Crop:
    name: str
    price_per_bu: float
    yield_bu_per_acre: float


DEFAULT_CROPS = (
    Crop("corn", 7.00, 147.0),
    Crop("wheat", 7.50, 57.0),
    Crop("soybean", 14.25, 74.0),
)

YIELD_CLASS_ADJUST = {"below": 0.90, "average": 1.00, "above": 1.10}


@dataclass(frozen=True)
class AgBaseline:
    """Displaced-crop revenue baseline: a three-crop rotation, one third of
    the converted acreage assigned to each crop every year."""

    crops: tuple[Crop, ...] = DEFAULT_CROPS
    yield_class: str = "average"

    def __post_init__(self):
        if self.yield_class not in YIELD_CLASS_ADJUST:
            raise ValueError(f"unknown yield class {self.yield_class!r}")
        if not self.crops:
            raise ValueError("need at least one crop")

    @property
    def class_adjust(self) -> float:
        return YIELD_CLASS_ADJUST[self.yield_class]

    def composite_revenue_per_acre(self) -> float:
        """Mean of price x yield across the rotation, before the class adjust."""
        return sum(c.price_per_bu * c.yield_bu_per_acre for c in self.crops) / len(self.crops)

    def adjusted_revenue_per_acre(self) -> float:
        return self.composite_revenue_per_acre() * self.class_adjust


# ---------------------------------------------------------------------------
# Multipliers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImpactVector:
    """Regional economic effects of a bundle of direct expenditures.

    ``jobs`` are annual-job equivalents; the dollar fields are absolute (not
    per-MW).  Negative vectors represent losses (displaced agriculture).
    """

    output: float = 0.0
    earnings: float = 0.0
    jobs: float = 0.0
    value_added: float = 0.0

    def __add__(self, other: "ImpactVector") -> "ImpactVector":
        return ImpactVector(
            self.output + other.output,
            self.earnings + other.earnings,
            self.jobs + other.jobs,
            self.value_added + other.value_added,
        )

    def __neg__(self) -> "ImpactVector":
        return ImpactVector(-self.output, -self.earnings, -self.jobs, -self.value_added)

    def __sub__(self, other: "ImpactVector") -> "ImpactVector":
        return self + (-other)

    def __mul__(self, k: float) -> "ImpactVector":
        return ImpactVector(self.output * k, self.earnings * k, self.jobs * k, self.value_added * k)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.output, self.earnings, self.jobs, self.value_added)


ZERO_IMPACT = ImpactVector()


@dataclass(frozen=True)
class MultiplierRow:
    """Type-II multipliers for one commodity category.

    ``output``, ``earnings`` and ``value_added`` are dollars of effect per
    dollar of *locally captured* direct spending; ``jobs_per_million`` is
    annual-job equivalents per $1M of local direct spending in a 12-month
    window.  Relative to local direct spend the output multiplier is at least
    1 (the direct transaction itself counts); value-added never exceeds
    output.
    """

    output: float
    earnings: float
    jobs_per_million: float
    value_added: float

    def __post_init__(self):
        if self.output < 1.0:
            raise ValueError(f"output multiplier {self.output} below 1.0")
        if self.value_added > self.output + 1e-12:
            raise ValueError("value_added multiplier exceeds output multiplier")
        if self.jobs_per_million < 0 or self.earnings < 0 or self.value_added < 0:
            raise ValueError("multipliers must be non-negative")


@dataclass(frozen=True)
class MultiplierTable:
    """Per-category Type-II multipliers for one representative county economy."""

    state: str
    size_class: str           # "small" | "medium" | "large"
    rows: dict[str, MultiplierRow] = field(default_factory=dict)

    @property
    def profile_id(self) -> str:
        return f"{self.state}_{self.size_class}"

    def row(self, category: str) -> MultiplierRow:
        try:
            return self.rows[category]
        except KeyError:
            raise KeyError(
                f"multiplier table {self.profile_id} has no row for "
                f"category {category!r}"
            ) from None


def required_categories(
    install_profile: ExpenditureProfile = INSTALLATION_PROFILE,
    om_profile: ExpenditureProfile = OM_PROFILE,
    decom_profile: ExpenditureProfile = DECOMMISSIONING_PROFILE,
) -> tuple[str, ...]:
    """Every category name a multiplier table must carry a row for.

    Industry categories come from the three phase profiles (the lease and
    tax lines spend through the induced household/government rows instead);
    the three special rows close the list.
    """
    names: list[str] = []
    for profile in (install_profile, om_profile, decom_profile):
        for c in profile.categories:
            if profile.phase == "om" and c.name in OM_INDUCED_CATEGORIES:
                continue
            if c.name not in names:
                names.append(c.name)
    names.extend((ROW_HOUSEHOLD, ROW_GOVERNMENT, ROW_AGRICULTURE))
    return tuple(names)


def apply_multipliers(
    local_direct: dict[str, float], table: MultiplierTable
) -> ImpactVector:
    """Push locally captured direct dollars through the multiplier table."""
    out = earn = jobs = va = 0.0
    for category, dollars in local_direct.items():
        r = table.row(category)
        out += dollars * r.output
        earn += dollars * r.earnings
        jobs += dollars / 1e6 * r.jobs_per_million
        va += dollars * r.value_added
    return ImpactVector(out, earn, jobs, va)


def ag_offset_annual(
    displaced_acres: float,
    baseline: AgBaseline,
    table: MultiplierTable,
) -> ImpactVector:
    """Negative impact of one growing season of displaced crop production."""
    if displaced_acres < 0:
        raise ValueError("displaced_acres must be non-negative")
    direct = displaced_acres * baseline.adjusted_revenue_per_acre()
    return -apply_multipliers({ROW_AGRICULTURE: direct}, table)


# ---------------------------------------------------------------------------
# County profile and lifecycle roll-up
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountyProfile:
    """Everything the pipeline knows about one county.

    The economics engine uses the multiplier table, tax schedule, yield class
    and lease rate; the siting, curve and expansion layers fill in land
    capacity, the hourly capacity-factor series, and candidate spur-line
    geometries.
    """

    name: str
    state: str
    size_class: str
    yield_class: str
    multipliers: MultiplierTable
    tax: TaxSchedule
    lease_rate: float = DEFAULT_LEASE_RATE
    subregion: str = ""
    land_mw_solar: float = 0.0
    land_mw_wind: float = 0.0
    cf_solar: np.ndarray | None = None   # 8760 delivered-AC capacity factors
    spur_options: tuple = ()             # interconnect.SpurOption candidates


@dataclass(frozen=True)
class LifecycleImpact:
    """Year-by-year impact vectors and the annualized per-MW summaries."""

    yearly_net: tuple[ImpactVector, ...]
    yearly_gross: tuple[ImpactVector, ...]
    net_va_per_mw_yr: float
    gross_va_per_mw_yr: float

    @property
    def ag_va_per_mw_yr(self) -> float:
        """Annualized value-added lost to displaced agriculture (positive)."""
        return self.gross_va_per_mw_yr - self.net_va_per_mw_yr


def lifecycle_net_impact(
    spec: ProjectSpec,
    county: CountyProfile,
    install_profile: ExpenditureProfile = INSTALLATION_PROFILE,
    om_profile: ExpenditureProfile = OM_PROFILE,
    decom_profile: ExpenditureProfile = DECOMMISSIONING_PROFILE,
    crops: tuple[Crop, ...] = DEFAULT_CROPS,
) -> LifecycleImpact:
    """Roll the full project timeline into per-year impact vectors.

    Timeline slots: ``install_years`` years of construction (spend split
    pro-rata by months), ``life_years`` operating years, then one slot per
    (partial) decommissioning year.  Lease income lands in every slot; taxes
    in operating slots; one growing season of agricultural offset applies to
    every slot (construction spanning 13-24 months disrupts two seasons, which
    the ceil-to-years slotting reproduces).
    """
    table = county.multipliers
    baseline = AgBaseline(crops=crops, yield_class=county.yield_class)
    n_years = spec.total_years

    # Phase industry spending, per year slot.
    install_local = installation_direct(spec, install_profile)
    om_gross_by_year = om_schedule(spec, om_profile)
    decom_local = decommission_direct(spec, decom_profile)

    om_industry = [
        c for c in om_profile.categories if c.name not in OM_INDUCED_CATEGORIES
    ]

    lease_by_year, tax_by_year = lease_and_tax_induced(
        spec, county.lease_rate, county.tax
    )
    lease_capture = om_profile.capture("Land Lease")
    tax_capture = om_profile.capture("Taxes")

    ag = ag_offset_annual(spec.displaced_ag_acres, baseline, table)

    gross_vectors: list[ImpactVector] = []
    for year in range(1, n_years + 1):
        vec = ImpactVector()

        if year <= spec.install_years:
            months = min(12, spec.install_months - 12 * (year - 1))
            frac = months / spec.install_months
            vec = vec + apply_multipliers(
                {k: v * frac for k, v in install_local.items()}, table
            )
        elif year <= spec.install_years + spec.life_years:
            t_op = year - spec.install_years
            spend = om_gross_by_year[t_op - 1]
            direct = {
                c.name: spend * c.share * c.local_capture for c in om_industry
            }
            vec = vec + apply_multipliers(direct, table)
        else:
            vec = vec + apply_multipliers(decom_local, table)

        induced = {
            ROW_HOUSEHOLD: lease_by_year[year - 1] * lease_capture,
            ROW_GOVERNMENT: tax_by_year[year - 1] * tax_capture,
        }
        vec = vec + apply_multipliers(induced, table)
        gross_vectors.append(vec)

    net_vectors = [v + ag for v in gross_vectors]

    denom = spec.life_years * spec.nameplate_ac
    gross_va = sum(v.value_added for v in gross_vectors) / denom
    net_va = sum(v.value_added for v in net_vectors) / denom

    return LifecycleImpact(
        yearly_net=tuple(net_vectors),
        yearly_gross=tuple(gross_vectors),
        net_va_per_mw_yr=net_va,
        gross_va_per_mw_yr=gross_va,
    )


def crf(rate: float, years: int) -> float:
    """Capital recovery factor: the constant annuity repaying 1 over ``years``."""
    if years <= 0:
        raise ValueError("years must be positive")
    if rate == 0.0:
        return 1.0 / years
    return rate / (1.0 - (1.0 + rate) ** (-years))


def scaled_profile(profile: ExpenditureProfile, total_unit_cost: float) -> ExpenditureProfile:
    """Same category structure with a different phase total."""
    return replace(profile, total_unit_cost=total_unit_cost)
