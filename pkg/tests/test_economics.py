"""Tests for the county economic-impact engine.

Expected values are frozen from independent hand calculations: weighted
capture sums, annuity factors, and full lifecycle totals are re-derived
here with plain arithmetic rather than calling back into the module.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solarval import economics as econ

from conftest import uniform_table


# ---------------------------------------------------------------------------
# expenditure profiles
# ---------------------------------------------------------------------------

def test_profile_shares_close():
    for profile in (
        econ.INSTALLATION_PROFILE,
        econ.OM_PROFILE,
        econ.DECOMMISSIONING_PROFILE,
    ):
        total = sum(c.share for c in profile.categories)
        assert abs(total - 1.0) <= 1e-9
        for c in profile.categories:
            assert 0.0 <= c.local_capture <= 1.0


def test_installation_profile_pinned_values():
    p = econ.INSTALLATION_PROFILE
    assert p.total_unit_cost == 1.262
    by_name = {c.name: c for c in p.categories}
    assert by_name["Install Labor & Equipment"].share == 0.124
    assert by_name["Install Labor & Equipment"].local_capture == 1.0
    assert by_name["PV Modules"].share == 0.371
    assert by_name["PV Modules"].local_capture == 0.0
    assert by_name["Sales Tax"].local_capture == 0.80
    # weighted local capture, computed by hand from the share/capture pairs
    weighted = sum(c.share * c.local_capture for c in p.categories)
    assert abs(weighted - 0.27725) < 1e-12


def test_om_profile_pinned_values():
    p = econ.OM_PROFILE
    assert p.total_unit_cost == 21.690
    by_name = {c.name: c for c in p.categories}
    assert abs(by_name["Land Lease"].share * 21.690 - 4.406) < 1e-9
    assert by_name["Land Lease"].local_capture == 0.75
    assert abs(by_name["Taxes"].share * 21.690 - 4.580) < 1e-9
    assert by_name["Taxes"].local_capture == 0.80
    # local industry O&M spend per kW-yr, excluding the lease/tax rows
    # (those are routed through household/government rows instead)
    local = sum(
        c.share * c.local_capture * 21.690
        for c in p.categories
        if c.name not in econ.OM_INDUCED_CATEGORIES
    )
    assert abs(local - 4.38275) < 1e-9


def test_decommissioning_profile_pinned_values():
    p = econ.DECOMMISSIONING_PROFILE
    assert p.total_unit_cost == 41_969.0
    by_name = {c.name: c for c in p.categories}
    assert by_name["Remove Ground Screws and Power Poles"].share == 0.230
    weighted = sum(c.share * c.local_capture for c in p.categories)
    assert abs(weighted - 0.847) < 1e-12


def test_profile_rejects_bad_shares():
    cats = (econ.Category("A", 0.5, 1.0), econ.Category("B", 0.4, 1.0))
    with pytest.raises(ValueError):
        econ.ExpenditureProfile("install", cats, 1.0, "$/W_dc")


def test_profile_gross_and_local_split():
    gross = econ.INSTALLATION_PROFILE.gross_direct(1_000_000.0)
    assert sum(gross.values()) == pytest.approx(1_000_000.0)
    local = econ.INSTALLATION_PROFILE.local_direct(1_000_000.0)
    assert sum(local.values()) == pytest.approx(277_250.0)
    assert local["PV Modules"] == 0.0


def test_scaled_profile_keeps_shares():
    p = econ.scaled_profile(econ.INSTALLATION_PROFILE, 0.95)
    assert p.total_unit_cost == 0.95
    for a, b in zip(p.categories, econ.INSTALLATION_PROFILE.categories):
        assert a.share == b.share and a.local_capture == b.local_capture


# ---------------------------------------------------------------------------
# project geometry
# ---------------------------------------------------------------------------

def test_project_geometry_defaults():
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    assert spec.mw_dc == pytest.approx(125.0)
    assert spec.project_acres == pytest.approx(1000.0)
    assert spec.displaced_ag_acres == pytest.approx(800.0)
    assert spec.install_years == 2
    assert spec.decommission_years == 1
    assert spec.total_years == 33


def test_project_geometry_helper():
    spec = econ.ProjectSpec(nameplate_ac=7.5, inverter_load_ratio=1.1)
    mw_dc, acres, displaced = econ.derive_project_geometry(spec)
    assert mw_dc == pytest.approx(8.25)
    assert acres == pytest.approx(75.0)
    assert displaced == pytest.approx(60.0)


def test_project_spec_rejects_nonsense():
    with pytest.raises(ValueError):
        econ.ProjectSpec(nameplate_ac=0.0)
    with pytest.raises(ValueError):
        econ.ProjectSpec(nameplate_ac=10.0, life_years=40)
    with pytest.raises(ValueError):
        econ.ProjectSpec(nameplate_ac=10.0, downtime=1.5)


# ---------------------------------------------------------------------------
# phase direct costs
# ---------------------------------------------------------------------------

def test_installation_direct_hundred_mw():
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    local = econ.installation_direct(spec)
    # 125 MW_dc * 1e6 W/MW * 1.262 $/W = $157.75M gross
    assert sum(local.values()) == pytest.approx(157_750_000.0 * 0.27725)
    assert local["Install Labor & Equipment"] == pytest.approx(19_561_000.0)
    assert local["PV Modules"] == 0.0


def test_om_schedule_mean_is_benchmark():
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    sched = econ.om_schedule(spec)
    benchmark = 125_000.0 * 21.690
    assert len(sched) == 30
    assert np.mean(sched) == pytest.approx(benchmark, rel=1e-12)
    # year-over-year step is a constant 5% of the mid-life value
    steps = np.diff(sched)
    assert np.allclose(steps, 0.05 * benchmark)
    # endpoints of the ramp: 1 +/- 0.05 * 14.5
    assert sched[0] == pytest.approx(0.275 * benchmark)
    assert sched[-1] == pytest.approx(1.725 * benchmark)


def test_om_schedule_flat_when_rate_zero():
    spec = econ.ProjectSpec(nameplate_ac=10.0)
    sched = econ.om_schedule(spec, escalation_rate=0.0)
    assert np.allclose(sched, sched[0])


def test_om_schedule_rejects_steep_ramp():
    spec = econ.ProjectSpec(nameplate_ac=10.0)
    with pytest.raises(ValueError):
        econ.om_schedule(spec, escalation_rate=0.08)  # year 1 would go negative


def test_decommission_direct_hundred_mw():
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    local = econ.decommission_direct(spec)
    # 125 MW_dc * $41,969/MW = $5,246,125 gross; screws/poles fully local
    assert sum(local.values()) == pytest.approx(5_246_125.0 * 0.847)
    screws = local["Remove Ground Screws and Power Poles"]
    assert screws == pytest.approx(5_246_125.0 * 0.230)


# ---------------------------------------------------------------------------
# lease and taxes
# ---------------------------------------------------------------------------

def test_flat_pilot_npv_closed_form():
    tax = econ.TaxSchedule("OH", 8750.0, "flat_pilot")
    # independent annuity factor at the 7.5% convention
    annuity = (1.0 - 1.075 ** -30) / 0.075
    expected = 8750.0 * annuity
    assert tax.npv(30) == pytest.approx(expected, rel=1e-12)
    assert abs(expected - 103_400.0) / 103_400.0 < 0.01


def test_declining_schedule_npv():
    tax = econ.TaxSchedule("IN", 6080.0, "declining", decline_rate=0.10)
    expected = sum(
        6080.0 * 0.90 ** (t - 1) / 1.075 ** t for t in range(1, 31)
    )
    assert tax.npv(30) == pytest.approx(expected, rel=1e-12)
    assert tax.payment(1) == pytest.approx(6080.0)
    assert tax.payment(2) == pytest.approx(5472.0)


@pytest.mark.parametrize(
    "state, year1, target",
    [
        ("OH", 8750.0, 103_400.0),
        ("WI", 4980.0, 60_300.0),
        ("IN", 6080.0, 39_400.0),
        ("MI", 4750.0, 38_800.0),
        ("IL", 3690.0, 28_000.0),
        ("MN", 1670.0, 19_700.0),
    ],
)
def test_fit_decline_rate_round_trip(state, year1, target):
    d = econ.fit_decline_rate(year1, target)
    tax = econ.TaxSchedule(state, year1, "declining", decline_rate=d)
    assert tax.npv(30) == pytest.approx(target, abs=1.0)


def test_wisconsin_fit_escalates():
    # the flat annuity on $4,980 falls short of the $60,300 target, so the
    # fitted schedule must grow over time (negative decline rate)
    d = econ.fit_decline_rate(4980.0, 60_300.0)
    assert d < 0.0


def test_lease_and_tax_timeline(ohio_tax):
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    lease, tax = econ.lease_and_tax_induced(spec, 580.0, ohio_tax)
    assert len(lease) == 33 and len(tax) == 33
    # lease runs for every year the land is committed: $580/acre * 1000 acres
    assert np.allclose(lease, 580_000.0)
    # taxes accrue only while the plant operates
    assert np.allclose(tax[:2], 0.0) and tax[-1] == 0.0
    assert np.allclose(tax[2:32], 875_000.0)


# ---------------------------------------------------------------------------
# agricultural baseline
# ---------------------------------------------------------------------------

def test_ag_composite_revenue():
    base = econ.AgBaseline()
    assert base.composite_revenue_per_acre() == pytest.approx(837.00, abs=1e-9)
    above = econ.AgBaseline(yield_class="above")
    assert above.adjusted_revenue_per_acre() == pytest.approx(920.70)
    below = econ.AgBaseline(yield_class="below")
    assert below.adjusted_revenue_per_acre() == pytest.approx(753.30)


def test_ag_offset_is_negative():
    table = uniform_table(value_added=0.8)
    vec = econ.ag_offset_annual(100.0, econ.AgBaseline(), table)
    assert vec.value_added == pytest.approx(-100.0 * 837.0 * 0.8)
    assert vec.output < 0 and vec.jobs < 0


# ---------------------------------------------------------------------------
# multipliers
# ---------------------------------------------------------------------------

def test_multiplier_row_validation():
    with pytest.raises(ValueError):
        econ.MultiplierRow(0.9, 0.1, 1.0, 0.5)  # type II output < 1
    with pytest.raises(ValueError):
        econ.MultiplierRow(1.2, 0.1, 1.0, 1.5)  # value added above output
    with pytest.raises(ValueError):
        econ.MultiplierRow(1.2, -0.1, 1.0, 0.5)


def test_multiplier_table_unknown_category():
    table = uniform_table()
    with pytest.raises(KeyError, match="no-such-row"):
        table.row("no-such-row")


def test_apply_multipliers_by_hand():
    table = uniform_table(output=1.4, earnings=0.3, jobs=6.0, value_added=0.9)
    impact = econ.apply_multipliers({"Sales Tax": 2_000_000.0}, table)
    assert impact.output == pytest.approx(2_800_000.0)
    assert impact.earnings == pytest.approx(600_000.0)
    assert impact.jobs == pytest.approx(12.0)  # 2.0 $M * 6 jobs/$M
    assert impact.value_added == pytest.approx(1_800_000.0)


@given(
    scale=st.floats(0.1, 50.0),
    direct=st.floats(1.0, 1e7),
)
def test_apply_multipliers_is_linear(scale, direct):
    table = uniform_table()
    one = econ.apply_multipliers({"Grading": direct}, table)
    scaled = econ.apply_multipliers({"Grading": direct * scale}, table)
    assert scaled.value_added == pytest.approx(one.value_added * scale, rel=1e-9)
    assert scaled.jobs == pytest.approx(one.jobs * scale, rel=1e-9)


def test_impact_vector_algebra():
    a = econ.ImpactVector(1.0, 2.0, 3.0, 4.0)
    b = econ.ImpactVector(0.5, 0.5, 0.5, 0.5)
    assert (a + b).as_tuple() == (1.5, 2.5, 3.5, 4.5)
    assert (a - b).as_tuple() == (0.5, 1.5, 2.5, 3.5)
    assert (2.0 * a).as_tuple() == (2.0, 4.0, 6.0, 8.0)
    assert (-a).value_added == -4.0


# ---------------------------------------------------------------------------
# lifecycle roll-up
# ---------------------------------------------------------------------------

def _county(value_added=1.0, ag_value_added=None, lease_rate=580.0, year1=8750.0):
    return econ.CountyProfile(
        name="demo",
        state="OH",
        size_class="large",
        yield_class="average",
        multipliers=uniform_table(
            value_added=value_added, ag_value_added=ag_value_added
        ),
        tax=econ.TaxSchedule("OH", year1, "flat_pilot"),
        lease_rate=lease_rate,
    )


def test_lifecycle_hand_totals_unit_value_added():
    """Full roll-up against a by-hand total at unit value-added multipliers.

    100 MW_ac / 125 MW_dc, 33 year slots:
      install  157.75e6 * 0.27725              = 43,736,187.50
      O&M      4.38275 $/kW * 125e3 kW * 30 yr = 16,435,312.50
      decom    5,246,125 * 0.847               =  4,443,467.875
      lease    580,000 * 0.75 * 33             = 14,355,000.00
      taxes    875,000 * 0.80 * 30             = 21,000,000.00
    gross value added = 99,969,967.875 -> 33,323.322625 $/MW_ac-yr
    ag offset = 800 ac * 837 $/ac * 33 yr      = 22,096,800 -> 7,365.60
    """
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    out = econ.lifecycle_net_impact(spec, _county(value_added=1.0))
    assert len(out.yearly_net) == 33
    assert out.gross_va_per_mw_yr == pytest.approx(33_323.322625, abs=0.01)
    assert out.ag_va_per_mw_yr == pytest.approx(7_365.60, abs=0.01)
    assert out.net_va_per_mw_yr == pytest.approx(33_323.322625 - 7_365.60, abs=0.02)


def test_lifecycle_install_split_follows_months():
    # 18 install months: 12 in the first slot, 6 in the second
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    county = _county(value_added=1.0, lease_rate=0.0, year1=0.0)
    out = econ.lifecycle_net_impact(spec, county)
    install_local = 157_750_000.0 * 0.27725
    assert out.yearly_gross[0].value_added == pytest.approx(install_local * 12 / 18)
    assert out.yearly_gross[1].value_added == pytest.approx(install_local * 6 / 18)
    assert out.yearly_gross[32].value_added == pytest.approx(5_246_125.0 * 0.847)


def test_lifecycle_zero_value_added_multipliers():
    spec = econ.ProjectSpec(nameplate_ac=50.0)
    out = econ.lifecycle_net_impact(spec, _county(value_added=0.0))
    assert out.gross_va_per_mw_yr == pytest.approx(0.0, abs=1e-9)
    assert out.net_va_per_mw_yr == pytest.approx(0.0, abs=1e-9)


def test_lifecycle_monotone_in_yield_class():
    spec = econ.ProjectSpec(nameplate_ac=100.0)
    nets = {}
    for yc in ("below", "average", "above"):
        county = econ.CountyProfile(
            name="demo",
            state="OH",
            size_class="large",
            yield_class=yc,
            multipliers=uniform_table(),
            tax=econ.TaxSchedule("OH", 8750.0, "flat_pilot"),
        )
        nets[yc] = econ.lifecycle_net_impact(spec, county).net_va_per_mw_yr
    # richer farmland means a bigger foregone-ag offset, hence a lower net
    assert nets["below"] > nets["average"] > nets["above"]


@settings(max_examples=25, deadline=None)
@given(mw=st.floats(1.0, 400.0))
def test_lifecycle_per_mw_invariant_to_scale(mw):
    ref = econ.lifecycle_net_impact(
        econ.ProjectSpec(nameplate_ac=100.0), _county()
    )
    out = econ.lifecycle_net_impact(
        econ.ProjectSpec(nameplate_ac=mw), _county()
    )
    assert out.net_va_per_mw_yr == pytest.approx(ref.net_va_per_mw_yr, rel=1e-9)
    assert out.gross_va_per_mw_yr == pytest.approx(ref.gross_va_per_mw_yr, rel=1e-9)


# ---------------------------------------------------------------------------
# capital recovery
# ---------------------------------------------------------------------------

def test_crf_values():
    assert econ.crf(0.03, 30) == pytest.approx(0.0510192593, abs=1e-9)
    assert econ.crf(0.054, 30) == pytest.approx(0.0680472883, abs=1e-9)
    # degenerate rate: straight-line recovery
    assert econ.crf(0.0, 20) == pytest.approx(0.05)
