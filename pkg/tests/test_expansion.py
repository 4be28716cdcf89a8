"""Expansion model: hand-solved toys, accounting oracles, and guard rails."""

import numpy as np
import pytest

from solarval.curves import BenefitPoint, SupplyPoint
from solarval.expansion import (
    CEInfeasible,
    CEProblem,
    FleetUnit,
    Line,
    NewTech,
    Storage,
    SystemData,
    WindAsset,
    build_lp,
    co2_fraction,
    interpret,
    solve_model,
)
from solarval.simplex import solve

HOURS_PER_YEAR = 8760


def flat(value):
    return np.full(HOURS_PER_YEAR, float(value))


def day_night(day_value, night_value, day_hours=range(7, 19)):
    arr = np.full(HOURS_PER_YEAR, float(night_value))
    for d in range(365):
        for h in day_hours:
            arr[d * 24 + h] = day_value
    return arr


def toy_sys(
    demand=100.0,
    gas_cap=200.0,
    gas_var=50.0,
    gas_em=0.0,
    co2_base=1e12,
    fleet_extra=(),
    **kwargs,
):
    fleet = (
        FleetUnit("R", "gas", gas_cap, heat_rate=1.0, fuel_cost=gas_var,
                  emission_rate=gas_em),
    ) + tuple(fleet_extra)
    series = demand if isinstance(demand, np.ndarray) else flat(demand)
    return SystemData(
        subregions=("R",),
        demand={"R": series},
        county_subregion=kwargs.pop("county_subregion", {"alpha": "R", "beta": "R"}),
        fleet=fleet,
        co2_base=co2_base,
        **kwargs,
    )


def supply_point(county="alpha", cap=150.0, cost=100_000.0, cf=None):
    return SupplyPoint(county, cap, cost, flat(0.5) if cf is None else cf)


def benefit_point(county="alpha", cap=150.0, nva=0.0):
    return BenefitPoint(county, cap, nva, max(nva, 0.0))


def test_least_cost_toy_matches_hand_solution():
    # flat 100 MW load; gas at $50/MWh vs 150 MW of solar at $100k/MW-yr
    # delivering 0.5 MWh per MW-hour: solar saves 0.5*8760*50 = $219k per MW,
    # so it builds to its land cap and gas covers the last 25 MW each hour.
    sys = toy_sys()
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [supply_point()],
        [benefit_point()],
    )
    sol = solve_model(model)
    assert sol.status == "optimal"
    expected = 150 * 100_000.0 + 25 * 8760 * 50.0
    assert sol.objective == pytest.approx(expected, rel=1e-9)
    assert sol.solar_mw[("alpha", 2025)] == pytest.approx(150.0, abs=1e-7)
    assert sol.cost_component == pytest.approx(expected, rel=1e-9)
    assert sol.benefit_component == pytest.approx(0.0, abs=1e-9)
    assert sol.emissions[2025] == pytest.approx(0.0, abs=1e-9)
    assert sol.residual <= 1e-6


def test_must_run_shifts_the_balance_and_the_optimum():
    # 30 MW of must-run displaces gas first; solar now only pays for itself
    # up to the remaining 70 MW of load -> exactly 140 MW at cf 0.5.
    nuke = FleetUnit("R", "nuclear", 30.0, 0.0, 0.0, must_run=True)
    sys = toy_sys(fleet_extra=(nuke,))
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [supply_point(cap=400.0)],
        [benefit_point(cap=400.0)],
    )
    sol = solve_model(model)
    assert sol.solar_mw[("alpha", 2025)] == pytest.approx(140.0, abs=1e-6)
    assert sol.objective == pytest.approx(140 * 100_000.0, rel=1e-9)


def test_fixed_total_solar_is_hit_exactly():
    sys = toy_sys()
    model = build_lp(
        CEProblem(weight_cost=0.5, periods=(2025,),
                  fix_total_solar={2025: 120.0}),
        sys,
        [supply_point()],
        [benefit_point(nva=30_000.0)],
    )
    sol = solve_model(model)
    assert sol.total_solar[2025] == pytest.approx(120.0, abs=1e-6)


def test_unbounded_guard_fires_at_construction():
    with pytest.raises(ValueError, match="unbounded"):
        CEProblem(weight_cost=0.5, periods=(2025,))
    # weight 1 needs no pin
    CEProblem(weight_cost=1.0, periods=(2025,))


def test_benefit_weight_steers_capacity_to_the_richer_county():
    sys = toy_sys()
    supply = [
        supply_point("alpha", cap=100.0, cost=100_000.0),
        supply_point("beta", cap=100.0, cost=100_000.0),
    ]
    benefit = [
        benefit_point("alpha", cap=100.0, nva=35_000.0),
        benefit_point("beta", cap=100.0, nva=25_000.0),
    ]
    model = build_lp(
        CEProblem(weight_cost=0.2, periods=(2025,),
                  fix_total_solar={2025: 120.0}),
        sys, supply, benefit,
    )
    sol = solve_model(model)
    assert sol.solar_mw[("alpha", 2025)] == pytest.approx(100.0, abs=1e-6)
    assert sol.solar_mw[("beta", 2025)] == pytest.approx(20.0, abs=1e-6)
    # accounting oracle: benefit recomputed from the named investments
    recomputed = sum(
        nva * sol.solar_mw[(county, 2025)]
        for county, nva in (("alpha", 35_000.0), ("beta", 25_000.0))
    )
    assert sol.benefit_component == pytest.approx(recomputed, rel=1e-9)


def test_weight_sweep_is_pareto_monotone():
    # alpha's $250k/MW-yr exceeds the $219k of gas it displaces, so the
    # base run builds only beta; alpha's benefit edge wins once the weight
    # drops past 155/280
    sys = toy_sys()
    supply = [
        supply_point("alpha", cap=100.0, cost=250_000.0),
        supply_point("beta", cap=100.0, cost=95_000.0),
    ]
    benefit = [
        benefit_point("alpha", cap=100.0, nva=150_000.0),
        benefit_point("beta", cap=100.0, nva=25_000.0),
    ]
    base = solve_model(
        build_lp(CEProblem(1.0, (2025,)), sys, supply, benefit)
    )
    fix = {2025: base.total_solar[2025]}
    costs, benefits = [base.cost_component], [base.benefit_component]
    warm = base.warm
    for w in (0.6, 0.2):
        model = build_lp(
            CEProblem(w, (2025,), fix_total_solar=fix), sys, supply, benefit
        )
        sol = solve_model(model, warm=warm)
        warm = sol.warm
        costs.append(sol.cost_component)
        benefits.append(sol.benefit_component)
    assert all(b >= a - 1e-6 for a, b in zip(costs, costs[1:]))
    assert all(b >= a - 1e-6 for a, b in zip(benefits, benefits[1:]))
    assert benefits[-1] > benefits[0] + 1.0  # the allocation really flips


def test_capacity_carries_over_and_grows_with_demand():
    sys = toy_sys(period_demand_scale={2030: 1.3})
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025, 2030)),
        sys,
        [supply_point(cap=500.0)],
        [benefit_point(cap=500.0)],
    )
    sol = solve_model(model)
    first = sol.solar_mw[("alpha", 2025)]
    second = sol.solar_mw[("alpha", 2030)]
    assert second >= first - 1e-9
    assert set(sol.emissions) == {2025, 2030}
    # load grows 30%, so the cumulative build should strictly expand
    assert second > first + 1.0


def test_emissions_cap_forces_solar_past_the_cost_optimum():
    # cheap dirty gas would serve everything; the cap withdraws a fifth of
    # its room, which only 40 MW of solar can backfill
    base_tons = 100 * 8760 * 0.5
    sys = toy_sys(gas_var=20.0, gas_em=0.5, co2_base=base_tons)
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [supply_point(cap=400.0)],
        [benefit_point(cap=400.0)],
    )
    sol = solve_model(model)
    cap = 0.8 * base_tons  # 2025 allowance on the linear path
    assert sol.emissions[2025] <= cap * (1 + 1e-6)
    assert sol.emissions[2025] == pytest.approx(cap, rel=1e-6)
    assert sol.solar_mw[("alpha", 2025)] == pytest.approx(40.0, abs=1e-5)
    assert "co2[2025]" in sol.binding


def test_co2_trajectory_interpolates_linearly():
    assert co2_fraction(2025) == pytest.approx(0.8)
    assert co2_fraction(2030) == pytest.approx(0.6)
    assert co2_fraction(2035) == pytest.approx(0.4)
    assert co2_fraction(2040) == pytest.approx(0.2)
    assert co2_fraction(2045) == pytest.approx(0.2)   # held flat
    assert co2_fraction(2015) == pytest.approx(1.0)   # never above base


def test_storage_cycles_with_round_trip_losses():
    # daytime-only solar is near-free while gas is punitive, so the battery
    # charges at noon and discharges overnight within its 50 MW / 4 h rating
    sys = toy_sys(
        gas_var=200.0,
        storages=(Storage("R", power_mw=50.0, duration_h=4.0,
                          round_trip_eff=0.85),),
    )
    cf = day_night(1.0, 0.0)
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [SupplyPoint("alpha", 400.0, 10_000.0, cf)],
        [benefit_point(cap=400.0)],
    )
    res = solve(model.lp, max_iters=200_000)
    sol = interpret(res, model)
    chg = model.col("chg", res.x)   # (n_stor, nP, nD, 24)
    dis = model.col("dis", res.x)
    assert dis.sum() > 1.0          # the battery is actually used
    for d in range(chg.shape[2]):
        charged = chg[0, 0, d].sum()
        discharged = dis[0, 0, d].sum()
        assert discharged == pytest.approx(0.85 * charged, rel=1e-6, abs=1e-6)
    soc = model.col("soc", res.x)
    assert soc.max() <= 200.0 + 1e-6
    assert dis.max() <= 50.0 + 1e-6
    assert sol.residual <= 1e-6


def test_transmission_moves_surplus_between_regions():
    # region A has all the cheap solar, region B all the load beyond its
    # small gas unit; the corridor is the only way to share it
    demand = {"A": flat(20.0), "B": flat(100.0)}
    sys = SystemData(
        subregions=("A", "B"),
        demand=demand,
        county_subregion={"alpha": "A"},
        fleet=(FleetUnit("B", "gas", 150.0, 1.0, 80.0),),
        lines=(Line("AB", "A", "B", capacity_mw=60.0, length_mi=100.0),),
        co2_base=1e12,
    )
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [SupplyPoint("alpha", 500.0, 20_000.0, flat(0.5))],
        [benefit_point(cap=500.0)],
    )
    res = solve(model.lp, max_iters=200_000)
    sol = interpret(res, model)
    flow = model.col("flow", res.x)
    assert flow.max() <= 60.0 + 1e-6
    assert flow.max() == pytest.approx(60.0, abs=1e-5)  # corridor saturates
    assert sol.solar_mw[("alpha", 2025)] > 100.0


def test_new_tech_builds_when_the_fleet_cannot_keep_up():
    sys = toy_sys(
        demand=160.0,
        gas_cap=100.0,
        gas_var=60.0,
        new_techs=(NewTech("ngcc", "R", capex_per_mw=700_000.0,
                           fom_per_mw_yr=20_000.0, var_cost=40.0,
                           emission_rate=0.35, max_build_mw=500.0),),
    )
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [supply_point(cap=50.0)],
        [benefit_point(cap=50.0)],
    )
    sol = solve_model(model)
    assert sol.new_mw[("ngcc:R", 2025)] > 30.0
    assert sol.emissions[2025] > 0.0


def test_infeasible_demand_names_the_balance_rows():
    sys = toy_sys(demand=100.0, gas_cap=30.0)
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)), sys, [], []
    )
    with pytest.raises(CEInfeasible, match=r"bal\["):
        solve_model(model)


def test_iteration_limit_propagates_as_a_failure():
    sys = toy_sys()
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [supply_point()],
        [benefit_point()],
    )
    with pytest.raises(CEInfeasible, match="iteration_limit"):
        solve_model(model, max_iters=1)


def test_join_errors_are_specific():
    sys = toy_sys()
    prob = CEProblem(weight_cost=1.0, periods=(2025,))
    with pytest.raises(ValueError, match="no subregion mapping"):
        build_lp(prob, sys, [supply_point("gamma")], [benefit_point("gamma")])
    with pytest.raises(ValueError, match="no benefit point"):
        build_lp(prob, sys, [supply_point("alpha")], [])
    with pytest.raises(ValueError, match="capacity-factor series"):
        build_lp(prob, sys, [SupplyPoint("alpha", 10.0, 1000.0, None)],
                 [benefit_point("alpha")])


def test_solution_invariant_under_currency_rescaling():
    kappa = 3.0
    results = []
    for scale in (1.0, kappa):
        sys = toy_sys(gas_var=50.0 * scale)
        supply = [
            supply_point("alpha", cap=100.0, cost=105_000.0 * scale),
            supply_point("beta", cap=100.0, cost=95_000.0 * scale),
        ]
        benefit = [
            benefit_point("alpha", cap=100.0, nva=35_000.0 * scale),
            benefit_point("beta", cap=100.0, nva=25_000.0 * scale),
        ]
        model = build_lp(
            CEProblem(0.4, (2025,), fix_total_solar={2025: 150.0}),
            sys, supply, benefit,
        )
        results.append(solve_model(model))
    a, b = results
    for county in ("alpha", "beta"):
        assert a.solar_mw[(county, 2025)] == pytest.approx(
            b.solar_mw[(county, 2025)], abs=1e-6
        )
    assert b.objective == pytest.approx(kappa * a.objective, rel=1e-9)


def test_system_data_validation():
    with pytest.raises(ValueError, match="duplicate"):
        SystemData(("R", "R"), {"R": flat(1.0)}, {})
    with pytest.raises(ValueError, match="cover every subregion"):
        SystemData(("R",), {"Q": flat(1.0)}, {})
    with pytest.raises(ValueError, match="unknown subregion"):
        SystemData(
            ("R",), {"R": flat(1.0)}, {},
            lines=(Line("x", "R", "Q", 10.0, 5.0),),
        )
    with pytest.raises(ValueError, match="round-trip"):
        Storage("R", 10.0, round_trip_eff=1.4)
    with pytest.raises(ValueError, match="non-negative"):
        FleetUnit("R", "gas", -5.0, 1.0, 1.0)
    with pytest.raises(ValueError, match="strictly increasing"):
        CEProblem(1.0, (2030, 2025))
    with pytest.raises(ValueError, match="match periods"):
        CEProblem(1.0, (2025, 2030), emissions_fraction=(0.5,))


def test_wind_contributes_energy_without_benefit():
    sys = toy_sys(
        wind=(WindAsset("breezy", "R", max_mw=80.0, cost_per_mw_yr=40_000.0,
                        cf=flat(0.4)),),
    )
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [supply_point(cap=50.0)],
        [benefit_point(cap=50.0, nva=30_000.0)],
    )
    sol = solve_model(model)
    # wind at $40k for 0.4*8760 = 3504 MWh beats $50 gas, so it builds out
    assert sol.wind_mw[("breezy", 2025)] == pytest.approx(80.0, abs=1e-6)
    # and none of it shows up in the benefit ledger
    assert sol.benefit_component == pytest.approx(
        30_000.0 * sol.solar_mw[("alpha", 2025)], rel=1e-9
    )


def test_rep_days_selected_automatically_when_not_given():
    sys = toy_sys()
    model = build_lp(
        CEProblem(weight_cost=1.0, periods=(2025,)),
        sys,
        [supply_point()],
        [benefit_point()],
    )
    assert sum(d.weight for d in model.rep_days) == pytest.approx(365.0)
    assert len(model.rep_days) >= 4
