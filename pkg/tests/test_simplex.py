"""Tests for the bounded-variable simplex solver."""

import numpy as np
import pytest

from solarval import simplex as sx

from brute_lp import brute_solve, random_box_lp


def make_lp(c, A, senses, b, lo=None, hi=None):
    c = np.asarray(c, dtype=float)
    n = c.size
    return sx.StandardFormLP(
        c=c,
        A=np.asarray(A, dtype=float).reshape(len(b), n),
        senses=tuple(senses),
        b=np.asarray(b, dtype=float),
        lo=np.zeros(n) if lo is None else np.asarray(lo, dtype=float),
        hi=np.full(n, np.inf) if hi is None else np.asarray(hi, dtype=float),
    )


# ---------------------------------------------------------------------------
# hand-checkable instances
# ---------------------------------------------------------------------------

def test_single_variable():
    lp = make_lp([-1.0], [[1.0]], "<", [5.0])
    res = sx.solve(lp)
    assert res.status == "optimal"
    assert res.x[0] == pytest.approx(5.0)
    assert res.objective == pytest.approx(-5.0)


def test_degenerate_edge_optimum():
    lp = make_lp([-1.0, -1.0], [[1.0, 1.0]], "<", [1.0])
    res = sx.solve(lp)
    assert res.status == "optimal"
    # any point of the optimal face is fine; the objective is unique
    assert res.objective == pytest.approx(-1.0)
    assert res.x.sum() == pytest.approx(1.0)


def test_equality_row():
    lp = make_lp([1.0, 1.0], [[1.0, 1.0]], "=", [2.0],
                 lo=[0.0, 0.0], hi=[5.0, 5.0])
    res = sx.solve(lp)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(2.0)


def test_geq_row_with_negative_lower_bound():
    lp = make_lp([1.0], [[1.0]], ">", [-1.0], lo=[-3.0], hi=[np.inf])
    res = sx.solve(lp)
    assert res.status == "optimal"
    assert res.x[0] == pytest.approx(-1.0)


def test_bound_flip_path():
    # the optimum parks x at its own upper bound, short of the row limit
    lp = make_lp([-1.0], [[1.0]], "<", [10.0], lo=[1.0], hi=[4.0])
    res = sx.solve(lp)
    assert res.status == "optimal"
    assert res.x[0] == pytest.approx(4.0)
    assert res.objective == pytest.approx(-4.0)


def test_free_variable_through_equality():
    lp = sx.StandardFormLP(
        c=np.array([1.0, 0.0]),
        A=np.array([[1.0, 1.0]]),
        senses=("=",),
        b=np.array([3.0]),
        lo=np.array([0.0, -np.inf]),
        hi=np.array([10.0, np.inf]),
    )
    res = sx.solve(lp)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(0.0)
    assert res.x[1] == pytest.approx(3.0)


def test_infeasible():
    lp = make_lp([1.0], [[1.0], [1.0]], "<>", [1.0, 2.0])
    res = sx.solve(lp)
    assert res.status == "infeasible"


def test_unbounded():
    lp = make_lp([-1.0], [[1.0]], ">", [1.0])
    res = sx.solve(lp)
    assert res.status == "unbounded"


def test_unbounded_box_only():
    lp = sx.StandardFormLP(
        c=np.array([-1.0]),
        A=np.zeros((0, 1)),
        senses=(),
        b=np.zeros(0),
        lo=np.array([0.0]),
        hi=np.array([np.inf]),
    )
    assert sx.solve(lp).status == "unbounded"


def test_box_only_optimum():
    lp = sx.StandardFormLP(
        c=np.array([2.0, -3.0]),
        A=np.zeros((0, 2)),
        senses=(),
        b=np.zeros(0),
        lo=np.array([-1.0, 0.0]),
        hi=np.array([4.0, 7.0]),
    )
    res = sx.solve(lp)
    assert res.status == "optimal"
    assert res.x == pytest.approx([-1.0, 7.0])
    assert res.objective == pytest.approx(-23.0)


def test_iteration_limit_status():
    lp = make_lp(
        [-2.0, -3.0, -1.0],
        [[1.0, 2.0, 1.0], [3.0, 1.0, 0.0], [0.0, 1.0, 4.0]],
        "<<<",
        [10.0, 15.0, 12.0],
    )
    res = sx.solve(lp, max_iters=1)
    assert res.status == "iteration_limit"
    full = sx.solve(lp)
    assert full.status == "optimal"
    assert full.iterations > 1


def test_badly_scaled_row():
    lp = make_lp([-1.0], [[1e8]], "<", [1e8])
    res = sx.solve(lp)
    assert res.status == "optimal"
    assert res.x[0] == pytest.approx(1.0)


def test_beale_style_degeneracy_terminates():
    # a classic cycling-prone instance; must terminate and agree with the
    # brute-force enumeration
    lp = sx.StandardFormLP(
        c=np.array([-0.75, 150.0, -0.02, 6.0]),
        A=np.array([
            [0.25, -60.0, -0.04, 9.0],
            [0.5, -90.0, -0.02, 3.0],
            [0.0, 0.0, 1.0, 0.0],
        ]),
        senses=("<", "<", "<"),
        b=np.array([0.0, 0.0, 1.0]),
        lo=np.zeros(4),
        hi=np.full(4, 50.0),  # finite box so the oracle applies
    )
    res = sx.solve(lp)
    status, obj, _ = brute_solve(lp)
    assert res.status == status == "optimal"
    assert res.objective == pytest.approx(obj, abs=1e-8)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def test_cost_scaling_invariance():
    rng = np.random.default_rng(7)
    lp = random_box_lp(rng)
    res1 = sx.solve(lp)
    if res1.status != "optimal":
        pytest.skip("drew an infeasible instance")
    lp2 = sx.StandardFormLP(
        c=lp.c * 7.25, A=lp.A, senses=lp.senses, b=lp.b, lo=lp.lo, hi=lp.hi
    )
    res2 = sx.solve(lp2)
    assert res2.status == "optimal"
    assert res2.objective == pytest.approx(res1.objective * 7.25, rel=1e-8)
    assert np.allclose(res1.x, res2.x, atol=1e-8)


def test_weak_duality_certificate():
    lp = make_lp(
        [3.0, 1.0, 4.0],
        [[1.0, 1.0, 0.0], [0.0, 1.0, 2.0]],
        ">>",
        [2.0, 3.0],
        lo=[0.0, 0.0, 0.0],
        hi=[10.0, 10.0, 10.0],
    )
    res = sx.solve(lp)
    assert res.status == "optimal"
    bound = sx.dual_bound(lp, res.duals)
    assert bound <= res.objective + 1e-6
    assert bound == pytest.approx(res.objective, abs=1e-6)


def test_warm_start_reuses_basis():
    lp = make_lp(
        [-2.0, -3.0, -1.0],
        [[1.0, 2.0, 1.0], [3.0, 1.0, 0.0], [0.0, 1.0, 4.0]],
        "<<<",
        [10.0, 15.0, 12.0],
    )
    cold = sx.solve(lp)
    assert cold.status == "optimal"
    again = sx.solve(lp, warm=cold.warm)
    assert again.status == "optimal"
    assert again.iterations == 0
    assert again.objective == pytest.approx(cold.objective)

    # perturb the costs: the old basis stays primal-feasible, so the warm
    # restart should need strictly fewer pivots than the cold solve
    lp2 = sx.StandardFormLP(
        c=np.array([-2.1, -2.9, -1.0]), A=lp.A, senses=lp.senses,
        b=lp.b, lo=lp.lo, hi=lp.hi,
    )
    warm2 = sx.solve(lp2, warm=cold.warm)
    cold2 = sx.solve(lp2)
    assert warm2.status == cold2.status == "optimal"
    assert warm2.objective == pytest.approx(cold2.objective, rel=1e-9)
    assert warm2.iterations <= cold2.iterations


def test_input_validation():
    with pytest.raises(sx.LPError):
        make_lp([1.0], [[1.0]], "<", [1.0], lo=[2.0], hi=[1.0])
    with pytest.raises(sx.LPError):
        make_lp([1.0], [[1.0]], "≤", [1.0])
    with pytest.raises(sx.LPError):
        sx.StandardFormLP(
            c=np.array([1.0]), A=np.zeros((0, 1)), senses=(), b=np.zeros(0),
            lo=np.array([-np.inf]), hi=np.array([np.inf]),
        )
    with pytest.raises(sx.LPError):
        make_lp([np.inf], [[1.0]], "<", [1.0])


# ---------------------------------------------------------------------------
# randomized agreement with the vertex-enumeration oracle
# ---------------------------------------------------------------------------

def test_random_agreement_small_battery():
    rng = np.random.default_rng(2024)
    n_infeasible = 0
    for _ in range(60):
        lp = random_box_lp(rng)
        res = sx.solve(lp)
        status, obj, _ = brute_solve(lp)
        assert res.status == status, f"solver={res.status} oracle={status}"
        if status == "optimal":
            assert res.objective == pytest.approx(obj, abs=1e-6)
            # the optimal point must actually satisfy the constraints
            resid = lp.A @ res.x - lp.b
            for i, s in enumerate(lp.senses):
                scale = max(1.0, np.max(np.abs(lp.A[i].toarray())))
                if s == "<":
                    assert resid[i] <= 1e-6 * scale
                elif s == ">":
                    assert resid[i] >= -1e-6 * scale
                else:
                    assert abs(resid[i]) <= 1e-6 * scale
        else:
            n_infeasible += 1
    # the battery must exercise both branches
    assert 0 < n_infeasible < 60


def test_random_duals_never_overshoot():
    rng = np.random.default_rng(99)
    seen = 0
    while seen < 15:
        lp = random_box_lp(rng)
        res = sx.solve(lp)
        if res.status != "optimal":
            continue
        seen += 1
        bound = sx.dual_bound(lp, res.duals)
        assert bound <= res.objective + 1e-5 * (1 + abs(res.objective))
