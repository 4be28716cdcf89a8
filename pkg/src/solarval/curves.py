"""Region-wide solar supply and marginal-benefit curves.

A supply point prices one county's buildable capacity per MW-year:
financed capital net of the investment tax credit, fixed O&M, and that
county's cheapest tie-in line spread over its capacity.  A benefit point
carries the same county's net (and gross) value-added per MW-year from the
lifecycle roll-up.  Sorting supply ascending and benefit descending yields
the two step curves the expansion model consumes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .economics import (
    DECOMMISSIONING_PROFILE,
    INSTALLATION_PROFILE,
    OM_PROFILE,
    CountyProfile,
    ProjectSpec,
    crf,
    lifecycle_net_impact,
)
from .interconnect import cheapest_spur

FINANCE_RATE = 0.054   # real, on generation capital
FINANCE_YEARS = 30
DEFAULT_ITC = 0.30


@dataclass(frozen=True)
class SupplyPoint:
    """One county's capacity block on the ascending cost curve."""

    county: str
    capacity_mw: float
    annualized_cost: float                  # $/MW-yr
    cf_series: np.ndarray | None = None     # hourly capacity factors

    def __post_init__(self):
        if self.capacity_mw < 0:
            raise ValueError("capacity_mw must be non-negative")
        if not np.isfinite(self.annualized_cost) or self.annualized_cost <= 0:
            raise ValueError("annualized_cost must be positive and finite")
        if self.cf_series is not None:
            arr = np.asarray(self.cf_series, dtype=float)
            if arr.min(initial=0.0) < 0 or arr.max(initial=0.0) > 1:
                raise ValueError("capacity factors must lie in [0, 1]")
            object.__setattr__(self, "cf_series", arr)


@dataclass(frozen=True)
class BenefitPoint:
    """One county's capacity block on the descending net value-added curve."""

    county: str
    capacity_mw: float
    net_va_per_mw_yr: float
    gross_va_per_mw_yr: float

    def __post_init__(self):
        if self.capacity_mw < 0:
            raise ValueError("capacity_mw must be non-negative")
        for v in (self.net_va_per_mw_yr, self.gross_va_per_mw_yr):
            if not np.isfinite(v):
                raise ValueError("value-added figures must be finite")
        if self.net_va_per_mw_yr > self.gross_va_per_mw_yr + 1e-9:
            raise ValueError("net value-added cannot exceed gross")


def annualized_capital(
    capex_per_mw: float,
    itc: float = DEFAULT_ITC,
    rate: float = FINANCE_RATE,
    years: int = FINANCE_YEARS,
) -> float:
    """Yearly recovery of one MW of capital after the tax credit."""
    if not 0 <= itc < 1:
        raise ValueError("itc must lie in [0, 1)")
    return crf(rate, years) * capex_per_mw * (1.0 - itc)


def build_supply(
    counties,
    capex_per_mw: float,
    fom_per_mw_yr: float,
    itc: float = DEFAULT_ITC,
    rate: float = FINANCE_RATE,
    years: int = FINANCE_YEARS,
) -> list[SupplyPoint]:
    """Ascending-cost supply points, one per county with buildable land.

    Counties without capacity are dropped; the per-MW cost of a county's
    cheapest spur (capital recovery plus fixed O&M, sized at the county's
    full capacity) is added on top of generation capital and O&M.
    """
    cap_term = annualized_capital(capex_per_mw, itc, rate, years)
    points = []
    for county in counties:
        capacity = county.land_mw_solar
        if capacity <= 0:
            continue
        tie_in = 0.0
        if county.spur_options:
            _, stack = cheapest_spur(county.spur_options, mva=capacity)
            tie_in = stack.annual_total / capacity
        points.append(
            SupplyPoint(
                county=county.name,
                capacity_mw=capacity,
                annualized_cost=cap_term + fom_per_mw_yr + tie_in,
                cf_series=county.cf_solar,
            )
        )
    points.sort(key=lambda p: (p.annualized_cost, p.county))
    return points


def build_benefit(
    counties,
    spec: ProjectSpec,
    install_profile=INSTALLATION_PROFILE,
    om_profile=OM_PROFILE,
    decom_profile=DECOMMISSIONING_PROFILE,
) -> list[BenefitPoint]:
    """Descending net value-added points from the lifecycle roll-up.

    The gross figure (without the displaced-agriculture offset) is kept for
    the with/without comparison overlay.
    """
    points = []
    for county in counties:
        if county.land_mw_solar <= 0:
            continue
        impact = lifecycle_net_impact(
            spec, county, install_profile, om_profile, decom_profile
        )
        points.append(
            BenefitPoint(
                county=county.name,
                capacity_mw=county.land_mw_solar,
                net_va_per_mw_yr=impact.net_va_per_mw_yr,
                gross_va_per_mw_yr=impact.gross_va_per_mw_yr,
            )
        )
    points.sort(key=lambda p: (-p.net_va_per_mw_yr, p.county))
    return points


def step_rows(points, value_of) -> list[tuple[float, float]]:
    """(cumulative GW, value) pairs in curve order."""
    rows, cum = [], 0.0
    for p in points:
        cum += p.capacity_mw
        rows.append((cum / 1000.0, value_of(p)))
    return rows


def supply_rows(points: list[SupplyPoint]) -> list[tuple[float, float]]:
    return step_rows(points, lambda p: p.annualized_cost)


def benefit_rows(
    points: list[BenefitPoint], gross: bool = False
) -> list[tuple[float, float]]:
    if gross:
        return step_rows(points, lambda p: p.gross_va_per_mw_yr)
    return step_rows(points, lambda p: p.net_va_per_mw_yr)


def write_curve(path: Path | str, rows: list[tuple[float, float]]) -> None:
    """Two-column delimited curve file: cumulative_gw, value."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cumulative_gw", "value"])
        for gw, value in rows:
            writer.writerow([f"{gw:.6f}", f"{value:.6f}"])


def read_curve(path: Path | str) -> list[tuple[float, float]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:2] != ["cumulative_gw", "value"]:
            raise ValueError(f"{path}: not a curve file (header {header!r})")
        return [(float(a), float(b)) for a, b, *_ in reader]
