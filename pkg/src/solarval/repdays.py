"""Collapse a full hourly year into a small set of weighted typical days.

Each season contributes the day closest to its centroid (in standardized
demand / solar / wind feature space) plus the day containing the season's
highest net load; the day of the annual demand peak is always kept with a
weight of one.  Centroid days absorb the remaining day count of their
season so the weights total exactly one year.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HOURS_PER_DAY = 24
DAYS_PER_YEAR = 365
HOURS_PER_YEAR = HOURS_PER_DAY * DAYS_PER_YEAR

_MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)
_SEASON_OF_MONTH = {
    12: "DJF", 1: "DJF", 2: "DJF",
    3: "MAM", 4: "MAM", 5: "MAM",
    6: "JJA", 7: "JJA", 8: "JJA",
    9: "SON", 10: "SON", 11: "SON",
}
SEASONS = ("DJF", "MAM", "JJA", "SON")

# Nameplate shares of the annual demand peak assumed when ranking days by
# net load before any capacity decision exists.
NET_LOAD_SOLAR_SHARE = 0.30
NET_LOAD_WIND_SHARE = 0.10


def season_of_day(day: int) -> str:
    """Season label for a 0-based day index of a non-leap year."""
    if not 0 <= day < DAYS_PER_YEAR:
        raise ValueError(f"day index {day} outside a 365-day year")
    doy = day
    for month, n in enumerate(_MONTH_DAYS, start=1):
        if doy < n:
            return _SEASON_OF_MONTH[month]
        doy -= n
    raise AssertionError("unreachable")


def season_days(season: str) -> tuple[int, ...]:
    """All day indices belonging to one season."""
    if season not in SEASONS:
        raise ValueError(f"unknown season {season!r}")
    return tuple(d for d in range(DAYS_PER_YEAR) if season_of_day(d) == season)


@dataclass(frozen=True)
class RepDay:
    """One selected day and the number of calendar days it stands for."""

    day: int                 # 0-based day-of-year
    weight: float            # days represented
    season: str
    kinds: tuple[str, ...]   # subset of ("centroid", "max_net", "peak")
    demand: np.ndarray       # 24 hourly values
    cf_solar: np.ndarray     # 24 hourly capacity factors
    cf_wind: np.ndarray      # 24 hourly capacity factors

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError("representative-day weight must be positive")
        for label in ("demand", "cf_solar", "cf_wind"):
            arr = np.asarray(getattr(self, label), dtype=float)
            if arr.shape != (HOURS_PER_DAY,):
                raise ValueError(f"{label} must hold 24 hourly values")
            object.__setattr__(self, label, arr)


def _day_matrix(series: np.ndarray) -> np.ndarray:
    return series[:HOURS_PER_YEAR].reshape(DAYS_PER_YEAR, HOURS_PER_DAY)


def _centroid_day(features: np.ndarray, days: np.ndarray) -> int:
    """Day index closest to the mean of the standardized feature block."""
    block = features[days]
    mu = block.mean(axis=0)
    sd = block.std(axis=0)
    sd[sd < 1e-12] = 1.0
    z = (block - mu) / sd
    dist = ((z - z.mean(axis=0)) ** 2).sum(axis=1)
    return int(days[int(np.argmin(dist))])  # argmin ties -> earliest day


def select_rep_days(
    demand: np.ndarray,
    cf_solar: np.ndarray | None = None,
    cf_wind: np.ndarray | None = None,
    solar_share: float = NET_LOAD_SOLAR_SHARE,
    wind_share: float = NET_LOAD_WIND_SHARE,
) -> tuple[RepDay, ...]:
    """Pick nine (or fewer, after merging coincident picks) weighted days.

    ``demand`` must cover at least one non-leap year of hourly values;
    capacity-factor series default to zero when not supplied, in which case
    net load reduces to demand itself.
    """
    demand = np.asarray(demand, dtype=float)
    if demand.size < HOURS_PER_YEAR:
        raise ValueError(
            f"need at least {HOURS_PER_YEAR} hourly values, got {demand.size}"
        )
    zeros = np.zeros(HOURS_PER_YEAR)
    cfs = zeros if cf_solar is None else np.asarray(cf_solar, dtype=float)
    cfw = zeros if cf_wind is None else np.asarray(cf_wind, dtype=float)
    for name, arr in (("cf_solar", cfs), ("cf_wind", cfw)):
        if arr.size < HOURS_PER_YEAR:
            raise ValueError(f"{name} shorter than one year")

    dem = _day_matrix(demand)
    sol = _day_matrix(cfs)
    wnd = _day_matrix(cfw)
    features = np.hstack([dem, sol, wnd])

    peak_mw = float(demand[:HOURS_PER_YEAR].max())
    net = dem - solar_share * peak_mw * sol - wind_share * peak_mw * wnd

    peak_day = int(np.argmax(demand[:HOURS_PER_YEAR]) // HOURS_PER_DAY)

    weights: dict[int, float] = {}
    kinds: dict[int, list[str]] = {}

    def tag(day: int, kind: str):
        kinds.setdefault(day, []).append(kind)

    for season in SEASONS:
        days = np.array(season_days(season), dtype=int)
        c = _centroid_day(features, days)
        daily_peak_net = net[days].max(axis=1)
        m = int(days[int(np.argmax(daily_peak_net))])
        tag(c, "centroid")
        tag(m, "max_net")
        others = {m}
        if season_of_day(peak_day) == season:
            tag(peak_day, "peak")
            others.add(peak_day)
        others.discard(c)
        for d in others:
            weights[d] = weights.get(d, 0.0) + 1.0
        weights[c] = weights.get(c, 0.0) + len(days) - len(others)

    total = sum(weights.values())
    if abs(total - DAYS_PER_YEAR) > 1e-9:
        raise AssertionError(f"representative-day weights sum to {total}")

    out = []
    for day in sorted(weights):
        out.append(
            RepDay(
                day=day,
                weight=weights[day],
                season=season_of_day(day),
                kinds=tuple(dict.fromkeys(kinds[day])),
                demand=dem[day].copy(),
                cf_solar=sol[day].copy(),
                cf_wind=wnd[day].copy(),
            )
        )
    return tuple(out)
