"""Spur-line interconnection cost model.

Estimates the capital and operating cost of tying a generation site into the
existing grid: conductor/structure cost by voltage class and circuit count,
a new substation (layout plus step-up transformer), and terrain-dependent
right-of-way acquisition and preparation.  Component costs are grossed up by
an administrative/management/financing overhead stack and a contingency
factor, then annualized with a capital recovery factor.

Network-upgrade costs beyond the interconnecting substation are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .economics import crf

VOLTAGE_CLASSES_KV = (69, 161, 230, 345, 500)
CIRCUIT_KINDS = ("single", "double")
TERRAIN_KINDS = ("light_vegetation", "forest", "wetland", "mountain")

# Structure + conductor cost per mile of line, by circuit count and kV.
STRUCTURE_COST_PER_MILE = {
    "single": {69: 528_430.0, 161: 520_772.0, 230: 580_308.0,
               345: 969_786.0, 500: 1_104_267.0},
    "double": {69: 849_838.0, 161: 1_005_009.0, 230: 1_150_818.0,
               345: 1_991_936.0, 500: 2_254_661.0},
}

# Substation layout cost by line kV: a 4-position ring bus for single-circuit
# taps, a 6-position breaker-and-a-half bus for double-circuit taps.
SUBSTATION_LAYOUT_COST = {
    "single": {69: 7_900_000.0, 161: 10_600_000.0, 230: 12_100_000.0,
               345: 17_500_000.0, 500: 25_400_000.0},
    "double": {69: 8_400_000.0, 161: 11_200_000.0, 230: 12_800_000.0,
               345: 18_700_000.0, 500: 27_300_000.0},
}

# Power transformer cost, $/MVA, indexed by (generation-side kV, line kV).
# The table is symmetric in its two voltage arguments.
_TRANSFORMER_KV_ORDER = VOLTAGE_CLASSES_KV
_TRANSFORMER_RATE_ROWS = (
    (4_961.0, 4_705.0, 5_217.0, 6_406.0, 8_262.0),   # 69 kV
    (4_705.0, 6_745.0, 5_494.0, 6_406.0, 7_862.0),   # 161 kV
    (5_217.0, 5_494.0, 7_472.0, 6_406.0, 7_862.0),   # 230 kV
    (6_406.0, 6_406.0, 6_406.0, 9_102.0, 8_262.0),   # 345 kV
    (8_262.0, 7_862.0, 7_862.0, 8_262.0, 12_198.0),  # 500 kV
)
TRANSFORMER_COST_PER_MVA = {
    (kv_a, kv_b): _TRANSFORMER_RATE_ROWS[i][j]
    for i, kv_a in enumerate(_TRANSFORMER_KV_ORDER)
    for j, kv_b in enumerate(_TRANSFORMER_KV_ORDER)
}

# Right-of-way: land preparation cost per acre by terrain, plus a flat
# per-acre acquisition overhead applied to every terrain type.
ROW_PREP_COST_PER_ACRE = {
    "light_vegetation": 272.0,
    "forest": 5_577.0,
    "wetland": 111_865.0,
    "mountain": 7_169.0,
}
ROW_LAND_COST_PER_ACRE = 15_235.0

# Default right-of-way corridor width by line kV.
DEFAULT_ROW_WIDTH_FT = {69: 100.0, 161: 100.0, 230: 100.0, 345: 150.0, 500: 200.0}

# Overhead stack: administrative & general 5.5%, project management 1.5%,
# financing during construction 7.5% -- additive -- then 30% contingency on
# the grossed-up subtotal.
OVERHEAD_RATE = 0.055 + 0.015 + 0.075
CONTINGENCY_RATE = 0.30

# Fixed O&M benchmarks for the spur and substation.
OM_PER_MVA_YR = 1_543.65
OM_PER_CIRCUIT_MILE_YR = 7_300.75

CRF_RATE = 0.03
CRF_YEARS = 30

SQFT_PER_ACRE = 43_560.0
FEET_PER_MILE = 5_280.0

DEFAULT_GEN_KV = 69


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VoltageClass:
    """A transmission voltage level plus circuit count."""

    kv: int
    circuit: str = "single"

    def __post_init__(self):
        if self.kv not in VOLTAGE_CLASSES_KV:
            raise ValueError(
                f"unknown voltage class {self.kv} kV; expected one of "
                f"{VOLTAGE_CLASSES_KV}"
            )
        if self.circuit not in CIRCUIT_KINDS:
            raise ValueError(f"circuit must be one of {CIRCUIT_KINDS}")

    @property
    def circuits(self) -> int:
        return 1 if self.circuit == "single" else 2


@dataclass(frozen=True)
class TerrainSegment:
    """A stretch of right-of-way over a single land-cover type."""

    terrain: str
    miles: float
    row_width_ft: float = 100.0

    def __post_init__(self):
        if self.terrain not in TERRAIN_KINDS:
            raise ValueError(
                f"unknown terrain {self.terrain!r}; expected one of {TERRAIN_KINDS}"
            )
        if self.miles < 0:
            raise ValueError("segment miles must be non-negative")
        if self.row_width_ft <= 0:
            raise ValueError("row width must be positive")

    @property
    def acreage(self) -> float:
        return self.miles * FEET_PER_MILE * self.row_width_ft / SQFT_PER_ACRE


@dataclass(frozen=True)
class CostStack:
    """Itemized interconnection cost with the overhead gross-up applied."""

    structures: float
    substation: float
    transformer: float
    row: float
    overheads: float
    contingency: float
    total: float
    annualized: float      # $/yr, capital recovery on total
    om_annual: float       # $/yr, fixed O&M on MVA and circuit-miles

    @property
    def base(self) -> float:
        return self.structures + self.substation + self.transformer + self.row

    @property
    def annual_total(self) -> float:
        """Complete yearly carrying cost: recovered capital plus fixed O&M."""
        return self.annualized + self.om_annual


# ---------------------------------------------------------------------------
# Component costs
# ---------------------------------------------------------------------------

def structure_cost(vc: VoltageClass, miles: float) -> float:
    """Line structure/conductor cost for a spur of the given length."""
    if miles < 0:
        raise ValueError("miles must be non-negative")
    return miles * STRUCTURE_COST_PER_MILE[vc.circuit][vc.kv]


def transformer_rate(gen_kv: int, line_kv: int) -> float:
    """$/MVA to step between the generation and line voltage levels."""
    try:
        return TRANSFORMER_COST_PER_MVA[(gen_kv, line_kv)]
    except KeyError:
        raise ValueError(
            f"no transformer rate for {gen_kv} kV to {line_kv} kV"
        ) from None


def substation_layout_cost(vc: VoltageClass) -> float:
    return SUBSTATION_LAYOUT_COST[vc.circuit][vc.kv]


def substation_cost(vc_line: VoltageClass, gen_kv: int, mva: float) -> float:
    """New-substation cost: bus layout plus an MVA-scaled transformer."""
    if mva <= 0:
        raise ValueError("mva must be positive")
    return substation_layout_cost(vc_line) + mva * transformer_rate(gen_kv, vc_line.kv)


def row_cost(segments: list[TerrainSegment] | tuple[TerrainSegment, ...]) -> float:
    """Right-of-way acquisition + preparation over the terrain segments."""
    return sum(
        seg.acreage * (ROW_PREP_COST_PER_ACRE[seg.terrain] + ROW_LAND_COST_PER_ACRE)
        for seg in segments
    )


def annual_om(mva: float, circuit_miles: float) -> float:
    """Fixed yearly O&M for the transformer bank and the line itself."""
    return mva * OM_PER_MVA_YR + circuit_miles * OM_PER_CIRCUIT_MILE_YR


# ---------------------------------------------------------------------------
# Full stack
# ---------------------------------------------------------------------------

def build_cost_stack(
    vc: VoltageClass,
    miles: float,
    mva: float,
    segments: list[TerrainSegment] | tuple[TerrainSegment, ...],
    gen_kv: int = DEFAULT_GEN_KV,
    rate: float = CRF_RATE,
    years: int = CRF_YEARS,
) -> CostStack:
    """Itemize, gross up, and annualize one interconnection option.

    The overhead stack is additive (5.5% + 1.5% + 7.5%) on the component sum;
    the 30% contingency then applies to the grossed-up subtotal, i.e.
    ``total = base * 1.145 * 1.30``.
    """
    structures = structure_cost(vc, miles)
    layout = substation_layout_cost(vc)
    if mva <= 0:
        raise ValueError("mva must be positive")
    transformer = mva * transformer_rate(gen_kv, vc.kv)
    row = row_cost(segments)

    base = structures + layout + transformer + row
    overheads = base * OVERHEAD_RATE
    contingency = (base + overheads) * CONTINGENCY_RATE
    total = base + overheads + contingency

    return CostStack(
        structures=structures,
        substation=layout,
        transformer=transformer,
        row=row,
        overheads=overheads,
        contingency=contingency,
        total=total,
        annualized=total * crf(rate, years),
        om_annual=annual_om(mva, miles * vc.circuits),
    )


@dataclass(frozen=True)
class SpurOption:
    """One candidate tie-in for a county: a voltage class at some distance.

    ``terrain_mix`` gives the fraction of the route over each land-cover
    type; fractions must sum to 1.  The right-of-way width defaults by
    voltage class and may be overridden.
    """

    line: VoltageClass
    miles: float
    terrain_mix: dict[str, float] = field(
        default_factory=lambda: {"light_vegetation": 1.0}
    )
    gen_kv: int = DEFAULT_GEN_KV
    row_width_ft: float | None = None

    def __post_init__(self):
        if self.miles < 0:
            raise ValueError("spur distance must be non-negative")
        total = sum(self.terrain_mix.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"terrain mix sums to {total}, expected 1.0")
        for terrain in self.terrain_mix:
            if terrain not in TERRAIN_KINDS:
                raise ValueError(f"unknown terrain {terrain!r}")

    @property
    def width_ft(self) -> float:
        if self.row_width_ft is not None:
            return self.row_width_ft
        return DEFAULT_ROW_WIDTH_FT[self.line.kv]

    def segments(self) -> tuple[TerrainSegment, ...]:
        return tuple(
            TerrainSegment(terrain, self.miles * frac, self.width_ft)
            for terrain, frac in sorted(self.terrain_mix.items())
            if frac > 0
        )

    def cost_stack(self, mva: float) -> CostStack:
        return build_cost_stack(
            self.line, self.miles, mva, self.segments(), gen_kv=self.gen_kv
        )


def cheapest_spur(
    options: list[SpurOption] | tuple[SpurOption, ...], mva: float
) -> tuple[SpurOption, CostStack]:
    """Pick the option with the lowest total yearly cost at the required MVA.

    Ties break toward the lower voltage class, then the shorter route, so the
    choice is deterministic regardless of input order.
    """
    if not options:
        raise ValueError("no interconnection options supplied")
    ranked = sorted(options, key=lambda o: (o.line.kv, o.line.circuits, o.miles))
    best: tuple[SpurOption, CostStack] | None = None
    for opt in ranked:
        stack = opt.cost_stack(mva)
        if best is None or stack.annual_total < best[1].annual_total - 1e-9:
            best = (opt, stack)
    return best
