"""Acceptance checks, one per test; each prints a single PASS/FAIL line.

All comparisons are exact (tolerance: equality). Runtime limits are
asserted where one is part of the check.
"""

import time
from fractions import Fraction

import pytest

from jetstrata import suites


@pytest.fixture
def report(capsys):
    def emit(tag, result, detail=""):
        line = f"[{tag}] {'PASS' if result else 'FAIL'}" + (f": {detail}" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        return result

    return emit


def _failed_rows(res):
    return [r for r in res.rows if r.get("verdict") != "PASS"]


def test_ac01_divisibility_dimension_mode(report):
    start = time.perf_counter()
    cusp = suites.suite_divisibility_cusp()
    node = suites.suite_divisibility_node()
    elapsed = time.perf_counter() - start
    covered = {(r["scheme"], r["p"], r["n"]) for r in cusp.rows + node.rows}
    want = {("cusp", p, n) for p in (3, 5) for n in range(7)} | {("node", p, n) for p in (2, 3) for n in range(7)}
    ok = cusp.passed and node.passed and covered == want and elapsed < 60
    detail = f"{len(covered)} (scheme, p, n) rows in {elapsed:.1f}s; failures {_failed_rows(cusp) + _failed_rows(node)}"
    assert report("AC-1 p^n divides #L_n for the cusp and the node", ok, detail)


def test_ac02_divisibility_equations_mode(report):
    res = suites.suite_divisibility_equations()
    covered = {(r["p"], r["n"]) for r in res.rows}
    ok = res.passed and covered == {(p, n) for p in (2, 3) for n in range(6)}
    assert all(r["power"] == r["n"] for r in res.rows)
    assert report("AC-2 p^n divides #L_n for V(x1x2, x1x3)", ok, f"{len(res.rows)} rows; failures {_failed_rows(res)}")


def test_ac03_fiber_cardinalities(report):
    res = suites.suite_fiber_sizes()
    sizes = [(r["scheme"], r["l"], r["expected_fiber"], [k for k, _ in r["fiber_histogram"]]) for r in res.rows]
    want = [("node", 2, 27, [27]), ("node", 3, 9, [9]), ("cusp", 4, 729, [729])]
    ok = res.passed and sizes == want
    assert report("AC-3 truncation fibers on strata are affine of the predicted size", ok, str(sizes))


def test_ac04_liftability_frontier(report):
    res = suites.suite_liftability()
    rows = [(r["scheme"], r["truncations"], r["dvr_success"], r["backtracking_success"], r["engines_agree"]) for r in res.rows]
    ok = res.passed and all(t > 0 and d == b == t and agree for _, t, d, b, agree in rows)
    assert report("AC-4 every stratum truncation lifts, both engines agree", ok, str(rows))


def test_ac05_stable_rank_bound(report):
    res = suites.suite_stable_rank_bound()
    covered = {(r["p"], r["n"]) for r in res.rows}
    ok = res.passed and covered == {(p, n) for p in (2, 3) for n in range(5)} and all(r["r"] == 2 for r in res.rows)
    worst = max(r["max_b"] for r in res.rows)
    assert report("AC-5 b <= r on the axes union", ok, f"max b = {worst}, {sum(r['jets'] for r in res.rows)} jets")


def test_ac06_membership_transfer(report):
    res = suites.suite_membership_transfer()
    ok = res.passed and all(r["violations"] == 0 and r["checked"] > 0 for r in res.rows)
    detail = ", ".join(f"sub {r['sub']}: {r['checked']} checked, {r['violations']} violations" for r in res.rows)
    assert report("AC-6 membership transfer on the axes union, n=4, p=2", ok, detail)


def test_ac07_quadric_topological_zeta(report):
    res = suites.suite_quadric_top()
    odd, even = res.rows
    ok = (
        res.passed
        and odd["zeta_top"] == "(4+s)/(2+s)^2"
        and odd["poles"] == [["-2", 2]]
        and odd["bound"] == "-2"
        and odd["bound_attained"]
        and even["zeta_top"] == "(10+3s)/((5+2s)(2+s))"
        and even["poles"][0] == ["-5/2", 1]
    )
    assert report("AC-7 quadric Z_top, poles and attained bound", ok, f"{odd['zeta_top']}; {even['zeta_top']}")


def test_ac08_quadric_reconstruction(report):
    start = time.perf_counter()
    res = suites.suite_quadric_reconstruction()
    elapsed = time.perf_counter() - start
    (row,) = res.rows
    ok = res.passed and elapsed < 600
    detail = row.get("error") or ", ".join(f"s={v['s']}: {v['value']}" for v in row["values"])
    assert report("AC-8 reconstruction over q in {3,5,7,11,13} recovers Z_top", ok, f"{detail} ({elapsed:.1f}s)")


def test_ac08_supplement_split_models(report):
    res = suites.suite_quadric_reconstruction_split()
    want = {"0": "1", "1": "5/9", "-1/2": "14/9", "1/2": "18/25"}
    ok = res.passed and all({v["s"]: v["value"] for v in r["values"]} == want for r in res.rows)
    assert report("AC-8 supplement: split model and split primes recover Z_top", ok, "; ".join(r["scheme"] for r in res.rows))


def test_ac09_contact_identity(report):
    res = suites.suite_contact_identity()
    schemes = {r["scheme"] for r in res.rows}
    ok = res.passed and schemes == set(suites.CORPUS)
    direct = sum(1 for r in res.rows if "direct" in r)
    assert report("AC-9 contact counts: identity equals direct enumeration", ok, f"{direct} direct comparisons over {len(schemes)} schemes")


def test_ac10_oracles(report):
    res = suites.suite_oracles()
    checks = {r["check"] for r in res.rows}
    ok = res.passed and checks == {"smith-vs-minors", "solve-affine-exhaustive", "truncation-stability"}
    counts = {c: sum(r.get("matrices", r.get("systems", r.get("checks", 0))) for r in res.rows if r["check"] == c) for c in checks}
    assert report("AC-10 Smith, solve_affine and truncation stability oracles", ok, str(dict(sorted(counts.items()))))
