"""Representative-day selection: weights, tie-breaks, and net-load ranking."""

import numpy as np
import pytest

from solarval.repdays import (
    DAYS_PER_YEAR,
    HOURS_PER_YEAR,
    SEASONS,
    RepDay,
    season_days,
    season_of_day,
    select_rep_days,
)


def test_season_calendar():
    assert season_of_day(0) == "DJF"          # Jan 1
    assert season_of_day(58) == "DJF"         # Feb 28
    assert season_of_day(59) == "MAM"         # Mar 1
    assert season_of_day(334) == "DJF"        # Dec 1
    assert season_of_day(364) == "DJF"        # Dec 31
    counts = {s: len(season_days(s)) for s in SEASONS}
    assert counts == {"DJF": 90, "MAM": 92, "JJA": 92, "SON": 91}
    assert sum(counts.values()) == DAYS_PER_YEAR


def test_constant_series_collapses_to_first_days():
    days = select_rep_days(np.full(HOURS_PER_YEAR, 70.0))
    # every pick inside a season ties; the earliest calendar day wins and
    # absorbs the whole season count
    assert [d.day for d in days] == [0, 59, 151, 243]
    assert [d.weight for d in days] == [90.0, 92.0, 92.0, 91.0]
    first = days[0]
    assert set(first.kinds) == {"centroid", "max_net", "peak"}
    assert sum(d.weight for d in days) == DAYS_PER_YEAR


def test_weights_always_sum_to_a_year():
    rng = np.random.default_rng(7)
    hours = np.arange(HOURS_PER_YEAR)
    demand = (
        100.0
        + 20.0 * np.sin(2 * np.pi * hours / 24)
        + 10.0 * np.sin(2 * np.pi * hours / HOURS_PER_YEAR)
        + rng.normal(0, 3.0, HOURS_PER_YEAR)
    )
    cfs = np.clip(rng.random(HOURS_PER_YEAR), 0, 1)
    cfw = np.clip(rng.random(HOURS_PER_YEAR), 0, 1)
    days = select_rep_days(demand, cfs, cfw)
    assert sum(d.weight for d in days) == pytest.approx(DAYS_PER_YEAR, abs=1e-9)
    assert 4 <= len(days) <= 9
    assert len({d.day for d in days}) == len(days)
    # exactly one peak-tagged day, weight folded in only once
    peaks = [d for d in days if "peak" in d.kinds]
    assert len(peaks) == 1


def test_centroid_lands_in_majority_regime():
    demand = np.full(HOURS_PER_YEAR, 100.0)
    mam = season_days("MAM")
    minority = mam[:8]
    for d in minority:
        demand[d * 24:(d + 1) * 24] = 200.0
    days = select_rep_days(demand)
    cent = next(d for d in days if d.season == "MAM" and "centroid" in d.kinds)
    assert cent.day not in minority

    # brute-force oracle: standardized distance over every day of the season
    block = demand.reshape(DAYS_PER_YEAR, 24)[list(mam)]
    feats = np.hstack([block, np.zeros_like(block), np.zeros_like(block)])
    mu, sd = feats.mean(axis=0), feats.std(axis=0)
    sd[sd < 1e-12] = 1.0
    z = (feats - mu) / sd
    dist = ((z - z.mean(axis=0)) ** 2).sum(axis=1)
    assert cent.day == mam[int(np.argmin(dist))]


def test_peak_day_kept_with_unit_weight():
    demand = np.full(HOURS_PER_YEAR, 100.0)
    demand[200 * 24 + 15] = 400.0
    days = select_rep_days(demand)
    peak = next(d for d in days if "peak" in d.kinds)
    assert peak.day == 200
    assert peak.weight == 1.0
    assert "max_net" in peak.kinds  # the spike also tops its season's net load
    assert sum(d.weight for d in days) == DAYS_PER_YEAR


def test_solar_availability_lowers_net_load_ranking():
    demand = np.full(HOURS_PER_YEAR, 100.0)
    cf = np.zeros(HOURS_PER_YEAR)
    for day in (10, 40):  # both in DJF
        for h in range(10, 15):
            demand[day * 24 + h] = 150.0
    for h in range(10, 15):
        cf[10 * 24 + h] = 1.0  # day 10's bump is fully offset by solar
    days = select_rep_days(demand, cf_solar=cf)
    mx = next(d for d in days if d.season == "DJF" and "max_net" in d.kinds)
    assert mx.day == 40


def test_rep_day_carries_the_source_slices():
    rng = np.random.default_rng(3)
    demand = 80 + rng.random(HOURS_PER_YEAR) * 40
    cfs = rng.random(HOURS_PER_YEAR)
    days = select_rep_days(demand, cf_solar=cfs)
    for d in days:
        lo, hi = d.day * 24, (d.day + 1) * 24
        np.testing.assert_array_equal(d.demand, demand[lo:hi])
        np.testing.assert_array_equal(d.cf_solar, cfs[lo:hi])
        np.testing.assert_array_equal(d.cf_wind, np.zeros(24))


def test_short_series_rejected():
    with pytest.raises(ValueError, match="hourly values"):
        select_rep_days(np.ones(8000))
    with pytest.raises(ValueError, match="shorter"):
        select_rep_days(np.ones(HOURS_PER_YEAR), cf_solar=np.ones(100))


def test_rep_day_validation():
    with pytest.raises(ValueError, match="weight"):
        RepDay(0, 0.0, "DJF", ("centroid",), np.ones(24), np.ones(24), np.ones(24))
    with pytest.raises(ValueError, match="24 hourly"):
        RepDay(0, 1.0, "DJF", ("centroid",), np.ones(23), np.ones(24), np.ones(24))
