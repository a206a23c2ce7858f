import json

import pytest

from jetstrata import data
from jetstrata.jets import (
    BudgetExceeded,
    Jet,
    ambient_jets,
    base_points,
    contact_count,
    count_jets,
    enumerate_jets,
    extend_jet,
    ideal_order_along_jet,
    verify_jet,
)
from jetstrata.parse import load_scheme_text
from jetstrata.rings import AtLeast


def scheme(gens, nvars, dim, names=None):
    doc = {"nvars": nvars, "generators": gens, "dim": dim}
    if names:
        doc["vars"] = names
    return load_scheme_text(json.dumps(doc))


def brute_count(X, n, p):
    return sum(1 for th in ambient_jets(X.N, n, p) if verify_jet(X, th))


def test_verify_jet_examples(cusp):
    assert verify_jet(cusp, Jet.make(5, 4, [[0, 0, 1], [0, 0, 0, 1]]))
    # (t, t): y^2 - x^3 = t^2 - t^3 vanishes mod t^2 but not mod t^3
    assert verify_jet(cusp, Jet.make(5, 1, [[0, 1], [0, 1]]))
    assert not verify_jet(cusp, Jet.make(5, 2, [[0, 1], [0, 1]]))
    for pt in base_points(cusp, 5):
        assert verify_jet(cusp, Jet.constant(5, 6, pt))


def test_base_points_examples(cusp):
    assert base_points(scheme(["x"], 1, 0), 5) == [(0,)]
    assert base_points(cusp, 3) == [(0, 0), (1, 1), (1, 2)]
    assert base_points(scheme(["1"], 1, 0), 5) == []


def test_extend_jet_examples(cusp):
    smooth = scheme(["x"], 2, 1)
    ext = extend_jet(smooth, Jet.make(3, 2, [[0], [1, 2, 0]]))
    assert ext.dimension == 1 and ext.size() == 3
    ext = extend_jet(cusp, Jet.constant(3, 0, (0, 0)))
    assert ext.dimension == 2 and len(list(ext.jets())) == 9
    double = scheme(["x^2"], 1, 0)
    assert extend_jet(double, Jet.constant(5, 0, (0,))).size() == 5


def test_extend_jet_empty_fiber(cusp):
    # (t, 0) mod t^2 lies on y^2 - x^3 but nothing above it does at level 2? check against brute force
    theta = Jet.make(3, 1, [[0, 1], [0, 0]])
    above = [th for th in ambient_jets(2, 2, 3) if th.truncate(1) == theta and verify_jet(cusp, th)]
    ext = extend_jet(cusp, theta)
    assert (ext.size() if ext else 0) == len(above)


def test_enumerate_examples(cusp):
    assert [j.to_list() for j in enumerate_jets(scheme(["x"], 1, 0), 2, 2)] == [[[0, 0, 0]]]
    jets = list(enumerate_jets(cusp, 1, 3))
    assert len(jets) == 15 and len(set(jets)) == 15
    assert all(verify_jet(cusp, j) for j in jets)
    assert list(enumerate_jets(scheme(["1"], 1, 0), 3, 5)) == []


def test_enumeration_is_deterministic_and_parallel_safe(node):
    seq = [j.to_list() for j in enumerate_jets(node, 3, 3)]
    par = [j.to_list() for j in enumerate_jets(node, 3, 3, workers=2)]
    assert seq == par


def test_count_examples(cusp):
    assert count_jets(cusp, 1, 3) == 15
    assert count_jets(cusp, 1, 5) == 45
    for p in (2, 3, 5):
        assert count_jets(cusp, 0, p) == p


@pytest.mark.parametrize("name", ["cusp", "node", "axes3", "planes3", "quadric3", "line2"])
def test_count_matches_ambient_brute_force(name):
    X = data.scheme(name)
    for p in (2, 3):
        n = 0
        while p ** (X.N * (n + 1)) <= 20000:
            want = brute_count(X, n, p)
            assert count_jets(X, n, p) == want
            assert count_jets(X, n, p, method="enumerate") == want
            n += 1


def test_frozen_counts():
    # values first obtained by ambient brute force and the enumerate method
    assert [count_jets(data.scheme("cusp"), n, 3) for n in range(7)] == [3, 15, 45, 135, 405, 2673, 8019]
    assert [count_jets(data.scheme("node"), n, 2) for n in range(5)] == [3, 8, 20, 48, 112]


def test_count_rejects_bad_input(cusp):
    with pytest.raises(ValueError):
        count_jets(cusp, 1, 4)
    with pytest.raises(ValueError):
        count_jets(cusp, -1, 3)
    with pytest.raises(BudgetExceeded):
        count_jets(cusp, 8, 3, budget=50)


def test_ideal_order_examples():
    line = scheme(["x"], 1, 0)
    assert ideal_order_along_jet(line, Jet.make(5, 3, [[0, 0, 1, 1]])) == 2
    v = ideal_order_along_jet(line, Jet.make(5, 3, [[0]]))
    assert isinstance(v, AtLeast) and v.bound == 4
    origin = scheme(["x", "y"], 2, 0)
    assert ideal_order_along_jet(origin, Jet.make(5, 2, [[0, 1], [0, 0, 1]])) == 1


def test_contact_count_examples(cusp):
    line = scheme(["x"], 1, 0)
    for p in (2, 3, 5):
        for n in range(4):
            assert contact_count(line, n, p) == p - 1
    assert contact_count(cusp, 1, 3) == 12
    assert contact_count(cusp, 1, 3, method="direct") == 12
    assert [contact_count(cusp, n, 3) for n in range(4)] == [6, 12, 90, 270]


def test_contact_direct_agrees_on_quadric():
    X = data.scheme("quadric3")
    for n in range(3):
        assert contact_count(X, n, 3) == contact_count(X, n, 3, method="direct")
