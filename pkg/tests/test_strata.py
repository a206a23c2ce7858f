import json

import pytest

from jetstrata import data
from jetstrata.jets import Jet, enumerate_jets
from jetstrata.parse import load_scheme_text
from jetstrata.strata import (
    UNSTABLE,
    HypothesisViolated,
    StratumKey,
    arc_invariants,
    divisibility_report,
    expected_dimension,
    fiber_report,
    jacobian_matrix,
    jet_invariants,
    stepwise_dimension,
    stratify,
    threshold,
)


def scheme(gens, nvars, dim):
    return load_scheme_text(json.dumps({"nvars": nvars, "generators": gens, "dim": dim}))


def test_threshold_parity():
    assert [threshold(n) for n in range(8)] == [0, 1, 1, 2, 2, 3, 3, 4]


def test_jacobian_examples(cusp, node):
    J = jacobian_matrix(cusp, Jet.make(5, 6, [[0, 0, 1], [0, 0, 0, 1]]))
    assert J.raw() == [[[0, 0, 0, 0, -3 % 5, 0, 0], [0, 0, 0, 2, 0, 0, 0]]]
    line = scheme(["x"], 1, 0)
    assert jacobian_matrix(line, Jet.make(5, 3, [[0]])).raw() == [[[1, 0, 0, 0]]]
    J = jacobian_matrix(node, Jet.make(5, 3, [[0, 1], [0]]))
    assert J.raw() == [[[0, 0, 0, 0], [0, 1, 0, 0]]]


def test_jet_invariant_examples(cusp, node):
    inv = jet_invariants(cusp, Jet.make(5, 7, [[0, 0, 1], [0, 0, 0, 1]]))
    assert (inv.exponents, inv.g, inv.b, inv.e) == ((3, 8), 4, 1, 3)
    smooth = scheme(["x"], 2, 1)
    inv = jet_invariants(smooth, Jet.make(3, 5, [[0], [1, 1]]))
    assert (inv.exponents, inv.b, inv.e) == ((0, 6), 1, 0)
    inv = jet_invariants(node, Jet.make(3, 4, [[0, 1], [0]]))
    assert (inv.exponents, inv.g, inv.b, inv.e) == ((1, 5), 2, 1, 1)


def test_e_reported_unstable_at_cap(cusp):
    inv = jet_invariants(cusp, Jet.make(3, 2, [[0], [0]]))
    assert inv.e == UNSTABLE and inv.b == 0


def test_jet_invariants_rejects_non_jets(cusp):
    with pytest.raises(ValueError):
        jet_invariants(cusp, Jet.make(3, 2, [[0, 1], [0, 1]]))


def test_arc_invariant_examples(cusp):
    arc = arc_invariants(cusp, [[0, 0, 1], [0, 0, 0, 1]], 5, 9)
    assert arc.labels() == ["3", ">=9"] and arc.p_count == 1
    smooth = scheme(["x"], 2, 1)
    assert arc_invariants(smooth, [[0], [2]], 5, 6).labels() == ["0", ">=6"]
    assert arc_invariants(cusp, [[0], [0]], 5, 6).labels() == [">=6", ">=6"]


def test_stratify_examples(node):
    groups = stratify(node, enumerate_jets(node, 4, 3), 4)
    keys = set(groups)
    assert StratumKey(4, ()) in keys
    assert StratumKey(4, (0,)) in keys and StratumKey(4, (1,)) in keys
    assert sum(len(v) for v in groups.values()) == 3 ** 0 * sum(1 for _ in enumerate_jets(node, 4, 3))
    smooth = scheme(["x"], 2, 1)
    assert set(stratify(smooth, enumerate_jets(smooth, 3, 2), 3)) == {StratumKey(3, (0,))}
    assert stratify(node, [], 4) == {}


def test_fiber_examples(node, axes):
    (rep,) = fiber_report(node, 4, 2, 3, "complete-intersection", stratum=[1])
    assert rep.passed and rep.expected == 27
    smooth = scheme(["x"], 2, 1)
    for n, l in [(3, 0), (3, 2), (4, 1)]:
        (rep,) = fiber_report(smooth, n, l, 3, "complete-intersection", stratum=[0])
        assert rep.passed and rep.expected == 3 ** (n - l)
    reps = fiber_report(axes, 4, 2, 2, "b-stratum")
    assert reps and all(r.passed for r in reps)


def test_reduced_mode_on_node(node):
    reps = fiber_report(node, 4, 2, 3, "reduced")
    assert reps and all(r.passed for r in reps)


def test_fiber_hypotheses(node, axes):
    with pytest.raises(HypothesisViolated) as info:
        fiber_report(node, 4, 0, 3, "complete-intersection", stratum=[1])
    assert info.value.condition == "l >= e_m"
    with pytest.raises(HypothesisViolated):
        fiber_report(node, 4, 4, 3, "complete-intersection", stratum=[1])
    with pytest.raises(HypothesisViolated):
        fiber_report(axes, 4, 3, 2, "complete-intersection", stratum=[0, 0])
    with pytest.raises(HypothesisViolated):
        fiber_report(node, 4, 2, 3, "complete-intersection", stratum=[2])


def test_stepwise_dimension():
    # e = (0, 1), n = 4: a(2) = 2, a(3) = 1
    assert stepwise_dimension(3, [0, 1], 4, 2) == (3 - 2) + (3 - 1)
    # node, e = (1,): steps l' = 2, 3 contribute (2 - 1) + (2 - 0)
    assert expected_dimension(data.scheme("node"), StratumKey(4, (1,)), 2, "b-stratum") == 3
    assert expected_dimension(data.scheme("node"), StratumKey(4, (1,)), 2, "complete-intersection") == 3


def test_divisibility_examples(cusp):
    table = divisibility_report(cusp, 3, [1, 2], "dimension")
    rows = table.to_dict()["rows"]
    assert rows[0] == {"n": 1, "count": 15, "power": 1, "verdict": "PASS"}
    assert rows[1]["power"] == 2 and rows[1]["verdict"] == "PASS"
    smooth = scheme(["x"], 2, 1)
    table = divisibility_report(smooth, 3, range(0, 5), "equations")
    assert table.passed and [r.count for r in table.rows] == [3 ** (n + 1) for n in range(5)]
    assert table.to_csv().splitlines()[0] == "p,n,count,power,verdict"


def test_divisibility_hypotheses(axes):
    with pytest.raises(HypothesisViolated):
        divisibility_report(axes, 2, [1], "equations")
    with pytest.raises(HypothesisViolated):
        divisibility_report(scheme(["x"], 1, 0), 2, [1], "dimension")
