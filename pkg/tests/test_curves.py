"""Supply and benefit curve assembly, ordering, and file round-trips."""

from dataclasses import replace

import numpy as np
import pytest

from solarval import economics as econ
from solarval.curves import (
    BenefitPoint,
    SupplyPoint,
    annualized_capital,
    benefit_rows,
    build_benefit,
    build_supply,
    read_curve,
    supply_rows,
    write_curve,
)
from solarval.interconnect import SpurOption, VoltageClass, cheapest_spur

from conftest import uniform_table

CAPEX = 1_000_000.0
FOM = 15_000.0


def county(name, land_mw, tax, table=None, spurs=()):
    return econ.CountyProfile(
        name=name,
        state="OH",
        size_class="large",
        yield_class="average",
        multipliers=table if table is not None else uniform_table(),
        tax=tax,
        land_mw_solar=land_mw,
        spur_options=tuple(spurs),
    )


def test_annualized_capital_closed_form():
    # CRF at 5.4% over 30 years
    assert annualized_capital(CAPEX, itc=0.0) == pytest.approx(
        68047.28834415139, abs=1e-6
    )
    assert annualized_capital(CAPEX, itc=0.30) == pytest.approx(
        0.7 * 68047.28834415139, abs=1e-6
    )
    with pytest.raises(ValueError):
        annualized_capital(CAPEX, itc=1.0)


def test_supply_cost_reduces_without_credit_or_tie_in(ohio_tax):
    pts = build_supply([county("a", 200.0, ohio_tax)], CAPEX, FOM, itc=0.0)
    assert len(pts) == 1
    expected = econ.crf(0.054, 30) * CAPEX + FOM
    assert pts[0].annualized_cost == pytest.approx(expected, rel=1e-12)


def test_tie_in_adds_exactly_its_per_mw_annual_cost(ohio_tax):
    spur = SpurOption(VoltageClass(69), miles=1.0)
    bare = build_supply([county("a", 200.0, ohio_tax)], CAPEX, FOM)
    wired = build_supply(
        [county("a", 200.0, ohio_tax, spurs=[spur])], CAPEX, FOM
    )
    _, stack = cheapest_spur([spur], mva=200.0)
    delta = wired[0].annualized_cost - bare[0].annualized_cost
    assert delta == pytest.approx(stack.annual_total / 200.0, rel=1e-12)


def test_zero_capacity_counties_omitted(ohio_tax):
    pts = build_supply(
        [county("none", 0.0, ohio_tax), county("some", 50.0, ohio_tax)],
        CAPEX,
        FOM,
    )
    assert [p.county for p in pts] == ["some"]


def test_supply_sorted_ascending_with_name_tiebreak(ohio_tax):
    near = SpurOption(VoltageClass(69), miles=0.5)
    far = SpurOption(VoltageClass(69), miles=6.0)
    pts = build_supply(
        [
            county("far", 100.0, ohio_tax, spurs=[far]),
            county("near", 100.0, ohio_tax, spurs=[near]),
            county("b_flat", 100.0, ohio_tax),
            county("a_flat", 100.0, ohio_tax),
        ],
        CAPEX,
        FOM,
    )
    costs = [p.annualized_cost for p in pts]
    assert costs == sorted(costs)
    assert [p.county for p in pts][:2] == ["a_flat", "b_flat"]  # exact tie
    rows = supply_rows(pts)
    assert rows[-1][0] == pytest.approx(0.4)  # 400 MW cumulative
    assert all(b[1] >= a[1] for a, b in zip(rows, rows[1:]))


def test_benefit_ordering_and_step_position(ohio_tax):
    rich = county("rich", 1000.0, ohio_tax, table=uniform_table(value_added=1.2))
    poor = county("poor", 2000.0, ohio_tax, table=uniform_table(value_added=0.8))
    pts = build_benefit([poor, rich], econ.ProjectSpec(nameplate_ac=100))
    assert [p.county for p in pts] == ["rich", "poor"]
    rows = benefit_rows(pts)
    assert rows[0][0] == pytest.approx(1.0)   # step after rich's 1 GW
    assert rows[1][0] == pytest.approx(3.0)
    assert rows[0][1] > rows[1][1]


def test_gross_net_gap_is_the_agricultural_offset(ohio_tax):
    c = county("demo", 500.0, ohio_tax)
    spec = econ.ProjectSpec(nameplate_ac=100)
    (pt,) = build_benefit([c], spec)
    impact = econ.lifecycle_net_impact(spec, c)
    assert pt.gross_va_per_mw_yr - pt.net_va_per_mw_yr == pytest.approx(
        impact.ag_va_per_mw_yr, rel=1e-12
    )
    assert pt.net_va_per_mw_yr <= pt.gross_va_per_mw_yr


def test_identical_counties_make_a_flat_curve(ohio_tax):
    cs = [county(f"c{i}", 100.0, ohio_tax) for i in range(4)]
    pts = build_benefit(cs, econ.ProjectSpec(nameplate_ac=100))
    values = {round(p.net_va_per_mw_yr, 9) for p in pts}
    assert len(values) == 1


def test_gross_curve_dominates_net_curve(ohio_tax):
    counties = [
        county("a", 300.0, ohio_tax, table=uniform_table(value_added=1.1)),
        county("b", 200.0, ohio_tax, table=uniform_table(value_added=0.9)),
    ]
    pts = build_benefit(counties, econ.ProjectSpec(nameplate_ac=100))
    net = benefit_rows(pts)
    gross = benefit_rows(pts, gross=True)
    assert all(g[1] >= n[1] for g, n in zip(gross, net))


def test_curve_file_round_trip(tmp_path):
    rows = [(0.1, 68047.288344), (0.35, 71500.0)]
    path = tmp_path / "supply.csv"
    write_curve(path, rows)
    back = read_curve(path)
    assert back == pytest.approx([(0.1, 68047.288344), (0.35, 71500.0)], abs=1e-6)
    with pytest.raises(ValueError, match="not a curve file"):
        bad = tmp_path / "bad.csv"
        bad.write_text("x,y\n1,2\n")
        read_curve(bad)


def test_point_validation():
    with pytest.raises(ValueError, match="positive"):
        SupplyPoint("x", 10.0, 0.0)
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        SupplyPoint("x", 10.0, 100.0, cf_series=np.array([0.5, 1.2]))
    with pytest.raises(ValueError, match="exceed gross"):
        BenefitPoint("x", 10.0, 30_000.0, 20_000.0)
    # capacity factors on the boundary are fine
    SupplyPoint("x", 10.0, 100.0, cf_series=np.array([0.0, 1.0]))
