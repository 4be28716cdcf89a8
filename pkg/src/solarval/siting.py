"""Developable-land quantification under county zoning ordinances.

Parcels are rectangles (length, width, area); ordinance setbacks shrink each
parcel by a perimeter strip weighted by how much of a typical boundary faces
roads, participating properties, and non-participating properties.  The
remaining area passes through coverage caps and lot-size filters, then a
power density converts acreage to a per-county capacity bound.

Ordinances that do not mention the technology ("silent") operate as bans
under current rules; an alternative preset reassigns them in proportion to
the observed allow/ban split among ordinances that do take a position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

FT_TO_M = 0.3048
M2_PER_ACRE = 4_046.8564224
W_PER_M2 = {"solar": 5.4, "wind": 0.5}
SLOPE_LIMIT_DEG = {"solar": 10.0, "wind": 19.0}

LAND_CLASSES = ("agricultural", "non_agricultural", "restricted")
STATUSES = ("allow", "ban", "silent", "unzoned")

# urban_flag: 0 = open land; 1 = inside the 0.5 km urban buffer (excluded for
# both technologies); 2 = in the 0.5-1 km ring (excluded for wind only, whose
# buffer is the larger of the two).
URBAN_OPEN, URBAN_CORE_BUFFER, URBAN_WIND_RING = 0, 1, 2

# Default ordinance applied to unzoned jurisdictions.
UNZONED_ROAD_FT = 100.0
UNZONED_PL_FT = 50.0
UNZONED_COVERAGE = 0.40
UNZONED_MIN_LOT_AC = 1.0

ZONING_PRESETS = ("current", "expanded", "ignore")


@dataclass(frozen=True)
class BoundaryShares:
    """How much of a typical parcel boundary faces each neighbor type."""

    road: float = 0.19
    ppl: float = 0.44
    nppl: float = 0.37

    def __post_init__(self):
        total = self.road + self.ppl + self.nppl
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"boundary shares sum to {total}, expected 1.0")
        if min(self.road, self.ppl, self.nppl) < 0:
            raise ValueError("boundary shares must be non-negative")


BOUNDARY_SHARES = BoundaryShares()


@dataclass(frozen=True)
class Parcel:
    """One rectangular land parcel."""

    id: str
    subdivision_id: str
    length_m: float
    width_m: float
    area_m2: float
    slope_deg: float
    land_class: str = "agricultural"
    urban_flag: int = URBAN_OPEN

    def __post_init__(self):
        if self.length_m <= 0 or self.width_m <= 0 or self.area_m2 <= 0:
            raise ValueError(f"parcel {self.id}: dimensions must be positive")
        rect = self.length_m * self.width_m
        if abs(rect - self.area_m2) > 0.05 * self.area_m2:
            raise ValueError(
                f"parcel {self.id}: area {self.area_m2} m² differs from "
                f"L×W = {rect:.1f} m² by more than 5%"
            )
        if self.slope_deg < 0:
            raise ValueError(f"parcel {self.id}: negative slope")
        if self.land_class not in LAND_CLASSES:
            raise ValueError(f"parcel {self.id}: unknown land class {self.land_class!r}")
        if self.urban_flag not in (URBAN_OPEN, URBAN_CORE_BUFFER, URBAN_WIND_RING):
            raise ValueError(f"parcel {self.id}: urban_flag must be 0, 1, or 2")

    @property
    def perimeter_m(self) -> float:
        return 2.0 * (self.length_m + self.width_m)


@dataclass(frozen=True)
class ZoningRule:
    """One jurisdiction's ordinance parameters for ground-mounted solar."""

    jurisdiction_id: str
    status: str
    road_setback_ft: float = 0.0
    ppl_setback_ft: float = 0.0
    nppl_setback_ft: float = 0.0
    min_lot_acres: float | None = None
    max_lot_acres: float | None = None
    coverage_frac: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"{self.jurisdiction_id}: unknown status {self.status!r}")
        for s in (self.road_setback_ft, self.ppl_setback_ft, self.nppl_setback_ft):
            if s < 0:
                raise ValueError(f"{self.jurisdiction_id}: negative setback")
        if (
            self.min_lot_acres is not None
            and self.max_lot_acres is not None
            and self.min_lot_acres > self.max_lot_acres
        ):
            raise ValueError(f"{self.jurisdiction_id}: min lot exceeds max lot")
        if self.coverage_frac is not None and not 0.0 <= self.coverage_frac <= 1.0:
            raise ValueError(f"{self.jurisdiction_id}: coverage outside [0, 1]")


def unzoned_default_rule(jurisdiction_id: str, status: str = "unzoned") -> ZoningRule:
    """The ordinance assumed where no zoning authority exists."""
    return ZoningRule(
        jurisdiction_id=jurisdiction_id,
        status=status,
        road_setback_ft=UNZONED_ROAD_FT,
        ppl_setback_ft=UNZONED_PL_FT,
        nppl_setback_ft=UNZONED_PL_FT,
        min_lot_acres=UNZONED_MIN_LOT_AC,
        coverage_frac=UNZONED_COVERAGE,
    )


PERMISSIVE_RULE_STATUS = "allow"


def permissive_rule(jurisdiction_id: str) -> ZoningRule:
    """A no-constraint ordinance (the ignore-zoning counterfactual)."""
    return ZoningRule(jurisdiction_id=jurisdiction_id, status=PERMISSIVE_RULE_STATUS)


# ---------------------------------------------------------------------------
# Subdivision dimension matching
# ---------------------------------------------------------------------------

def _zscore_params(samples):
    cols = list(zip(*samples))
    means, stds = [], []
    for col in cols:
        m = sum(col) / len(col)
        var = sum((x - m) ** 2 for x in col) / len(col)
        means.append(m)
        stds.append(math.sqrt(var) or 1.0)  # constant column -> unit scale
    return means, stds


def match_subdivisions(
    targets: list[tuple[float, float, float]],
    samples: list[tuple[float, float, float]],
    area_threshold: float,
    max_matches: int = 10_000,
) -> dict[int, list[int]]:
    """Map each (L, W, A) target to its nearest samples by accumulation.

    Distances are Euclidean in z-scored dimension space (standardized on the
    sample statistics, so raw area cannot dominate).  A target larger than
    its nearest sample is matched repeatedly -- with its remaining area
    shrinking by the matched sample's area each round -- until the remainder
    drops to ``area_threshold`` or below.  Ties go to the lowest sample
    index.
    """
    if not samples:
        raise ValueError("sample set is empty")
    means, stds = _zscore_params(samples)

    def z(vec):
        return [(x - m) / s for x, m, s in zip(vec, means, stds)]

    zsamples = [z(s) for s in samples]

    def nearest(vec) -> int:
        zt = z(vec)
        best_i, best_d = 0, float("inf")
        for i, zs in enumerate(zsamples):
            d = sum((a - b) ** 2 for a, b in zip(zt, zs))
            if d < best_d - 1e-15:
                best_i, best_d = i, d
        return best_i

    out: dict[int, list[int]] = {}
    for ti, (length, width, area) in enumerate(targets):
        matches: list[int] = []
        remaining = area
        while remaining > area_threshold and len(matches) < max_matches:
            si = nearest((length, width, remaining))
            matches.append(si)
            sample_area = samples[si][2]
            if sample_area <= 0:
                break  # cannot make progress against a zero-area sample
            remaining -= sample_area
        if not matches:  # tiny target: still record its single nearest sample
            matches.append(nearest((length, width, remaining)))
        out[ti] = matches
    return out


# ---------------------------------------------------------------------------
# Developable area
# ---------------------------------------------------------------------------

def _passes_filters(parcel: Parcel, technology: str) -> bool:
    if technology not in W_PER_M2:
        raise ValueError(f"unknown technology {technology!r}")
    if parcel.land_class != "agricultural":
        return False
    if parcel.slope_deg >= SLOPE_LIMIT_DEG[technology]:
        return False
    if parcel.urban_flag == URBAN_CORE_BUFFER:
        return False
    if technology == "wind" and parcel.urban_flag == URBAN_WIND_RING:
        return False
    return True


def developable_area(
    parcel: Parcel,
    rule: ZoningRule,
    shares: BoundaryShares = BOUNDARY_SHARES,
    technology: str | None = None,
) -> float:
    """Square meters of the parcel left developable under the ordinance.

    Setbacks are approximated as a perimeter strip: the boundary-weighted
    mean setback distance times the parcel perimeter is removed from the
    area (clamped at zero -- corners may be double-counted on small lots).
    A coverage cap then limits the fraction of the original parcel, and the
    lot-size filter zeroes parcels whose *resulting* developable acreage
    falls outside the ordinance's [min, max] window.
    """
    if technology is not None and not _passes_filters(parcel, technology):
        return 0.0
    if parcel.land_class != "agricultural":
        return 0.0
    if rule.status in ("ban", "silent"):
        return 0.0

    mean_setback_m = FT_TO_M * (
        shares.road * rule.road_setback_ft
        + shares.ppl * rule.ppl_setback_ft
        + shares.nppl * rule.nppl_setback_ft
    )
    area = max(0.0, parcel.area_m2 - parcel.perimeter_m * mean_setback_m)

    if rule.coverage_frac is not None:
        area = min(area, rule.coverage_frac * parcel.area_m2)

    acres = area / M2_PER_ACRE
    if rule.min_lot_acres is not None and acres < rule.min_lot_acres:
        return 0.0
    if rule.max_lot_acres is not None and acres > rule.max_lot_acres:
        return 0.0
    return area


def county_capacity(
    parcels: list[Parcel],
    rules: dict[str, ZoningRule],
    technology: str = "solar",
    power_density_w_m2: float | None = None,
) -> float:
    """Aggregate developable MW across a county's parcels.

    ``rules`` maps subdivision id to ordinance; parcels in subdivisions
    without an entry fall back to the unzoned default rule.
    """
    density = W_PER_M2[technology] if power_density_w_m2 is None else power_density_w_m2
    total_m2 = 0.0
    for p in parcels:
        if not _passes_filters(p, technology):
            continue
        rule = rules.get(p.subdivision_id)
        if rule is None:
            rule = unzoned_default_rule(p.subdivision_id)
        total_m2 += developable_area(p, rule)
    return total_m2 * density / 1e6


# ---------------------------------------------------------------------------
# Ordinance-status scenarios
# ---------------------------------------------------------------------------

def allow_share(rules: list[ZoningRule] | tuple[ZoningRule, ...]) -> float:
    """Fraction of position-taking ordinances that permit the technology."""
    n_allow = sum(1 for r in rules if r.status == "allow")
    n_ban = sum(1 for r in rules if r.status == "ban")
    if n_allow + n_ban == 0:
        return 1.0
    return n_allow / (n_allow + n_ban)


def extrapolate_silent(
    rules: list[ZoningRule] | tuple[ZoningRule, ...],
    p_allow: float | None = None,
) -> list[ZoningRule]:
    """Reassign silent ordinances to allow/ban per the observed split.

    Deterministic: silent jurisdictions are sorted by id and the first
    ``round(p_allow * n)`` become allow (with the unzoned default setback
    numbers, since the silent ordinance itself supplies none); the rest
    become bans.
    """
    if p_allow is None:
        p_allow = allow_share(rules)
    if not 0.0 <= p_allow <= 1.0:
        raise ValueError("p_allow outside [0, 1]")

    silent_ids = sorted(r.jurisdiction_id for r in rules if r.status == "silent")
    n_allow = math.floor(p_allow * len(silent_ids) + 0.5)
    promote = set(silent_ids[:n_allow])

    out = []
    for r in rules:
        if r.status != "silent":
            out.append(r)
        elif r.jurisdiction_id in promote:
            out.append(unzoned_default_rule(r.jurisdiction_id, status="allow"))
        else:
            out.append(replace(r, status="ban"))
    return out


def apply_preset(
    rules: list[ZoningRule] | tuple[ZoningRule, ...], preset: str
) -> list[ZoningRule]:
    """Transform an ordinance list per scenario preset.

    current  -- keep as-is (silent ordinances act as bans downstream)
    expanded -- extrapolate silent ordinances to allow/ban proportionally
    ignore   -- drop all ordinance constraints (every jurisdiction permits)
    """
    if preset == "current":
        return list(rules)
    if preset == "expanded":
        return extrapolate_silent(rules)
    if preset == "ignore":
        return [permissive_rule(r.jurisdiction_id) for r in rules]
    raise ValueError(f"unknown zoning preset {preset!r}; expected {ZONING_PRESETS}")
