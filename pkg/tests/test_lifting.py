import json

import pytest

from jetstrata import data
from jetstrata.dvr import Infeasible
from jetstrata.jets import Jet, verify_jet
from jetstrata.lifting import (
    LiftRequest,
    NoLift,
    Exhausted,
    lift_backtracking,
    lift_dvr,
    liftability_frontier,
    membership_transfer_check,
    recombine_generators,
)
from jetstrata.parse import load_scheme_text
from jetstrata.strata import HypothesisViolated


def scheme(gens, nvars, dim):
    return load_scheme_text(json.dumps({"nvars": nvars, "generators": gens, "dim": dim}))


def test_lift_node(node):
    theta = Jet.make(3, 3, [[0, 1], [0]])
    res = lift_dvr(LiftRequest(node, theta, 1, 8))
    assert res.jet.n == 8 and verify_jet(node, res.jet)
    assert res.jet.truncate(1) == theta.truncate(1)
    assert len(res.trace) == 7


def test_lift_smooth_keeps_x_zero():
    X = scheme(["x"], 2, 1)
    theta = Jet.make(5, 2, [[0], [1, 2, 3]])
    for policy in ("zeros", "random"):
        res = lift_dvr(LiftRequest(X, theta, 0, 6, policy=policy, seed=3))
        assert res.jet.coords[0] == (0,) * 7 and verify_jet(X, res.jet)


def test_lift_cusp_both_engines(cusp):
    theta = Jet.make(5, 7, [[0, 0, 1], [0, 0, 0, 1]])
    req = LiftRequest(cusp, theta, 4, 12)
    a = lift_dvr(req)
    b = lift_backtracking(req)
    for res in (a, b):
        assert verify_jet(cusp, res.jet) and res.jet.truncate(4) == theta.truncate(4)
    assert a.key_before.exponents == a.key_after.exponents == (3,)


def test_random_policy_is_seeded(node):
    theta = Jet.make(3, 3, [[0, 1], [0]])
    r1 = lift_dvr(LiftRequest(node, theta, 1, 7, policy="random", seed=11))
    r2 = lift_dvr(LiftRequest(node, theta, 1, 7, policy="random", seed=11))
    assert r1.jet == r2.jet and r1.trace == r2.trace


def test_lift_hypotheses(cusp):
    theta = Jet.make(5, 7, [[0, 0, 1], [0, 0, 0, 1]])
    with pytest.raises(HypothesisViolated):
        lift_dvr(LiftRequest(cusp, theta, 2, 12))
    with pytest.raises(HypothesisViolated):
        lift_dvr(LiftRequest(cusp, theta.truncate(6), 4, 12))
    with pytest.raises(ValueError):
        LiftRequest(cusp, theta, 8, 12)


def test_dvr_rejects_non_jets(cusp):
    # y = t^3 + t^4 gives y^2 - x^3 = 2t^7 + ..., nonzero mod t^8
    bad = Jet.make(5, 7, [[0, 0, 1], [0, 0, 0, 1, 1]])
    assert not verify_jet(cusp, bad)
    with pytest.raises(ValueError):
        lift_dvr(LiftRequest(cusp, bad, 4, 10))


def test_infeasible_carries_row_data():
    err = Infeasible(2, 5, 3)
    assert (err.row, err.required, err.actual) == (2, 5, 3)
    assert "row 2" in str(err)


def test_constant_origin_lifts(cusp):
    res = lift_backtracking(LiftRequest(cusp, Jet.constant(3, 2, (0, 0)), 0, 6))
    assert verify_jet(cusp, res.jet)


def test_nonreduced_backtracking():
    X = scheme(["x^2"], 1, 0)
    # x = 0 mod t^2 lifts; x = t is a 1-jet of V(x^2) but x^2 = t^2 survives mod t^3
    res = lift_backtracking(LiftRequest(X, Jet.make(3, 1, [[0, 0]]), 1, 3))
    assert verify_jet(X, res.jet)
    with pytest.raises(NoLift):
        lift_backtracking(LiftRequest(X, Jet.make(3, 1, [[0, 1]]), 1, 3))


def test_backtracking_budget(cusp):
    with pytest.raises(Exhausted):
        lift_backtracking(LiftRequest(cusp, Jet.constant(3, 0, (0, 0)), 0, 9), budget=3)


def test_frontier_examples(node):
    rep = liftability_frontier(node, [1], 1, 3, 4)
    assert rep["verdict"] == "PASS" and rep["engines_agree"] and rep["truncations"] > 0
    smooth = scheme(["x"], 2, 1)
    rep = liftability_frontier(smooth, [0], 0, 3, 3)
    assert rep["verdict"] == "PASS"


def test_membership_transfer(axes):
    rep = membership_transfer_check(axes, (0, 1), 4, 2)
    assert rep["verdict"] == "PASS" and rep["checked"] > 0
    full = membership_transfer_check(axes, (0, 1, 2), 3, 2)
    assert full["violations"] == []
    planes = data.scheme("planes3")
    assert membership_transfer_check(planes, (0, 1), 3, 2)["violations"] == []


def test_recombination_preserves_jets(node, axes):
    Y, mat = recombine_generators(axes, seed=5)
    assert len(mat) == 3
    for theta in [Jet.make(3, 3, [[0, 1], [0], [0]]), Jet.make(3, 3, [[1], [0, 1], [0, 0, 1]])]:
        assert verify_jet(axes, theta) == verify_jet(Y, theta)
