"""Lifting jets to higher jets.

``lift_dvr`` is the constructive triangularize-and-solve procedure: with
A*J(a) upper triangular (pivots t^e_i), a jet x agreeing with a through
level k >= e_m extends one level at a time, provided
(A f(x))_i = 0 mod t^(k + e_i + 1) for every row i.  ``lift_backtracking``
is an independent oracle that only uses one-level extensions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .dvr import Infeasible, SeriesMatrix, triangularize
from .jets import DEFAULT_BUDGET, AffineScheme, Jet, enumerate_jets, extend_jet, verify_jet
from .rings.poly import MultiPolynomial, eval_coeffs
from .rings.series import mul_coeffs
from .strata import HypothesisViolated, StratumKey, jet_exponents, jet_invariants, threshold


class Exhausted(RuntimeError):
    def __init__(self, budget: int) -> None:
        self.budget = budget
        super().__init__(f"search budget of {budget} nodes exhausted")


class NoLift(RuntimeError):
    pass


@dataclass
class LiftRequest:
    scheme: AffineScheme
    jet: Jet
    l: int
    target: int
    sub: Optional[Sequence[int]] = None  # 0-based generator indices used for lifting
    policy: str = "zeros"
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.l <= self.jet.n < self.target:
            raise ValueError(f"need l <= n0 < target, got l={self.l}, n0={self.jet.n}, target={self.target}")
        if self.policy not in ("zeros", "random"):
            raise ValueError(f"unknown free-variable policy {self.policy!r}")

    def presentation(self) -> AffineScheme:
        if self.sub is None:
            return self.scheme
        gens = [self.scheme.generators[i] for i in self.sub]
        return self.scheme.with_generators(gens)


@dataclass
class LiftResult:
    jet: Jet
    trace: List[dict] = field(default_factory=list)
    key_before: Optional[StratumKey] = None
    key_after: Optional[StratumKey] = None
    on_scheme: bool = True
    engine: str = ""

    def to_dict(self) -> dict:
        return {
            "engine": self.engine,
            "jet": self.jet.to_list(),
            "level": self.jet.n,
            "trace": self.trace,
            "stratum_before": self.key_before.to_dict() if self.key_before else None,
            "stratum_after": self.key_after.to_dict() if self.key_after else None,
            "on_scheme": self.on_scheme,
        }


def _val(a: Sequence[int]) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    return len(a)


def _pad(c: Sequence[int], M: int) -> List[int]:
    return (list(c) + [0] * M)[:M]


def _key_or_none(X: AffineScheme, theta: Jet) -> Optional[StratumKey]:
    return jet_invariants(X, theta, check=False).key if verify_jet(X, theta) else None


def lift_dvr(req: LiftRequest) -> LiftResult:
    """Lift pi_l(theta) to a jet at the target level on the chosen presentation."""
    X = req.presentation()
    theta = req.jet
    p, l, n0, target = theta.p, req.l, theta.n, req.target
    m, N = X.m, X.N
    if m > N:
        raise HypothesisViolated("m <= N", f"m={m}, N={N}")
    if not verify_jet(X, theta):
        raise ValueError("source is not a jet on the presentation")
    exps = jet_exponents(X, theta)[:m]
    if exps[-1] > l:
        raise HypothesisViolated("l >= e_m", f"l={l}, e={exps}")
    if n0 < l + exps[-1]:
        raise HypothesisViolated("n0 >= l + e_m", f"n0={n0}, l={l}, e_m={exps[-1]}")

    a = theta.truncate(l)
    cap = target + 1 + exps[-1]

    def jac_at(W: int) -> SeriesMatrix:
        pts = [_pad(c, W) for c in a.coords]
        raw = [[eval_coeffs(d, pts, W, p) for d in row] for row in X.partials]
        return SeriesMatrix._wrap(p, W, raw, N)

    # certify the pivot orders at growing precision; orders <= l are final
    # once the modulus exceeds l
    W = l + 1
    while True:
        tf = triangularize(jac_at(W), l + 1)
        if tf.b == m or W >= cap:
            break
        W = min(2 * W, cap)
    if tf.b != m:
        raise HypothesisViolated("m pivots of order <= l", f"found {tf.b}")
    tf_full = triangularize(jac_at(cap), l + 1)
    if tf_full.exponents != tf.exponents or tf_full.perm != tf.perm:
        raise ArithmeticError("pivot pattern changed with working precision")
    tf = tf_full
    e = tf.exponents
    A = tf.A.raw()
    T = tf.T.raw()
    perm = tf.perm

    # D: coefficient of t^e_i in row i of T (columns in permuted order);
    # unit upper triangular on the first m columns
    D = [[T[i][j][e[i]] for j in range(N)] for i in range(m)]
    rng = random.Random(req.seed)

    x = [_pad(c, cap) for c in a.coords]

    def Af(xs) -> List[List[int]]:
        vals = [eval_coeffs(f, xs, cap, p) for f in X.generators]
        out = []
        for i in range(m):
            acc = [0] * cap
            for k in range(m):
                pr = mul_coeffs(A[i][k], vals[k], cap, p)
                acc = [u + v for u, v in zip(acc, pr)]
            out.append([u % p for u in acc])
        return out

    h = Af(x)
    for i in range(m):
        need = l + e[i] + 1
        got = _val(h[i])
        if got < need:
            raise Infeasible(i + 1, need, got, f"row {i + 1}: h_{i + 1} has order {got}, required >= {need}")
    trace: List[dict] = []
    for k in range(l, target):
        # choose c for x + t^(k+1) c, solving D c = -[t^(k+1+e_i)] h_i
        rhs = [-h[i][k + 1 + e[i]] % p for i in range(m)]
        free_cols = [perm[j] for j in range(m, N)]
        choice = {}
        for j in free_cols:
            choice[j] = rng.randrange(p) if req.policy == "random" else 0
        c = [0] * N
        for j, v in choice.items():
            c[j] = v
        for i in reversed(range(m)):
            s = rhs[i]
            for jj in range(i + 1, N):
                s -= D[i][jj] * c[perm[jj]]
            c[perm[i]] = s * pow(D[i][i], -1, p) % p
        for j in range(N):
            x[j][k + 1] = c[j]
        h = Af(x)
        checks = []
        for i in range(m):
            need = k + 1 + e[i] + 1
            got = _val(h[i])
            checks.append({"row": i + 1, "required": need, "actual": min(got, cap), "ok": got >= need})
            if got < need:
                raise Infeasible(i + 1, need, got)
        trace.append({
            "level": k + 1,
            "pivots": {str(perm[i] + 1): c[perm[i]] for i in range(m)},
            "free": {str(j + 1): v for j, v in sorted(choice.items())},
            "checks": checks,
        })
    out = Jet.make(p, target, x)
    if not verify_jet(X, out) or out.truncate(l) != a:
        raise ArithmeticError("lift failed verification")
    return LiftResult(
        out,
        trace,
        _key_or_none(req.scheme, theta),
        _key_or_none(req.scheme, out),
        verify_jet(req.scheme, out),
        "dvr",
    )


def lift_backtracking(req: LiftRequest, budget: int = DEFAULT_BUDGET) -> LiftResult:
    """Depth-first search over one-level extensions of pi_l(theta), lexicographic order."""
    X = req.presentation()
    start = req.jet.truncate(req.l)
    if not verify_jet(X, start):
        raise NoLift("the truncation is not a jet")
    nodes = 0

    def dfs(th: Jet) -> Optional[List[Jet]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise Exhausted(budget)
        if th.n == req.target:
            return [th]
        ext = extend_jet(X, th)
        if ext is None:
            return None
        for child in ext.jets():
            found = dfs(child)
            if found is not None:
                return [th] + found
        return None

    path = dfs(start)
    if path is None:
        raise NoLift(f"no lift of the level-{req.l} truncation to level {req.target}")
    out = path[-1]
    trace = [{"level": th.n, "coefficients": [c[-1] for c in th.coords]} for th in path[1:]]
    return LiftResult(
        out,
        trace,
        _key_or_none(req.scheme, req.jet),
        _key_or_none(req.scheme, out),
        verify_jet(req.scheme, out),
        "backtracking",
    )


# -- frontier and membership checks ---------------------------------------


def relaxed_member(X: AffineScheme, theta: Jet, exps: Sequence[int]) -> bool:
    """First len(exps) invariant factors of theta equal exps (no e_b < g requirement)."""
    got = jet_exponents(X, theta)
    return tuple(got[: len(exps)]) == tuple(exps)


def _extends(X: AffineScheme, theta: Jet, n: int, budget: int) -> Optional[Jet]:
    """First level-n jet above theta in lexicographic order, or None."""
    if n == theta.n:
        return theta
    try:
        return lift_backtracking(LiftRequest(X, theta, theta.n, n), budget).jet
    except NoLift:
        return None


def liftability_frontier(
    X: AffineScheme,
    exps: Sequence[int],
    l: int,
    p: int,
    k: int,
    sub: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Lift the l-truncation of every level-(l+e_m) jet with the given exponents to level l+e_m+k."""
    M = X if sub is None else X.with_generators([X.generators[i] for i in sub])
    if len(exps) != M.m:
        raise HypothesisViolated("stratum length = number of generators used", f"{len(exps)} vs {M.m}")
    em = exps[-1] if exps else 0
    if l < em:
        raise HypothesisViolated("l >= e_m", f"l={l}, e_m={em}")
    n = l + em
    target = n + k
    # exponents <= l only depend on the l-truncation, so the truncations of
    # level-n stratum jets are the l-jets with these exponents that extend
    # to level n at all
    truncs: List[Jet] = []
    for tr in enumerate_jets(M, l, p, budget):
        if relaxed_member(M, tr, exps) and _extends(M, tr, n, budget):
            truncs.append(tr)
    rows = []
    failures = []
    for tr in truncs:
        theta = _extends(M, tr, n, budget)
        req = LiftRequest(X, theta, l, target, sub=sub)
        try:
            lift_dvr(req)
            dvr_ok = True
        except (Infeasible, HypothesisViolated, ArithmeticError):
            dvr_ok = False
        try:
            lift_backtracking(req, budget)
            bt_ok: Optional[bool] = True
        except NoLift:
            bt_ok = False
        except Exhausted:
            bt_ok = None
        rows.append((dvr_ok, bt_ok))
        if not (dvr_ok and bt_ok):
            failures.append({"truncation": tr.to_list(), "dvr": dvr_ok, "backtracking": bt_ok})
    total = len(rows)
    ok_dvr = sum(1 for d, _ in rows if d)
    ok_bt = sum(1 for _, b in rows if b)
    return {
        "stratum": list(exps),
        "l": l,
        "source_level": n,
        "target": target,
        "p": p,
        "truncations": total,
        "dvr_success": ok_dvr,
        "backtracking_success": ok_bt,
        "engines_agree": all(d == b for d, b in rows),
        "counterexamples": failures,
        "verdict": "PASS" if total and ok_dvr == ok_bt == total else "FAIL",
    }


def membership_transfer_check(
    X: AffineScheme, sub: Sequence[int], n: int, p: int, budget: int = DEFAULT_BUDGET
) -> dict:
    """Jets alpha on the sub-presentation sharing stratum and (n-g)-truncation with a jet of X must lie on X."""
    b = len(sub)
    M = X.with_generators([X.generators[i] for i in sub])
    g = threshold(n)
    cut = n - g
    anchors = set()
    for theta in enumerate_jets(X, n, p, budget):
        inv_x = jet_invariants(X, theta, check=False)
        if inv_x.b != b:
            continue
        inv_m = jet_invariants(M, theta, check=False)
        if inv_m.b == b and inv_m.key == inv_x.key:
            anchors.add((inv_x.key, theta.truncate(cut)))
    checked = 0
    violations = []
    for alpha in enumerate_jets(M, n, p, budget):
        key = jet_invariants(M, alpha, check=False).key
        if key.b != b or (key, alpha.truncate(cut)) not in anchors:
            continue
        checked += 1
        on_x = verify_jet(X, alpha)
        same = on_x and jet_invariants(X, alpha, check=False).key == key
        if not same:
            violations.append({"alpha": alpha.to_list(), "on_scheme": on_x})
    return {
        "sub": [i + 1 for i in sub],
        "n": n,
        "p": p,
        "anchors": len(anchors),
        "checked": checked,
        "violations": violations,
        "verdict": "PASS" if not violations else "FAIL",
    }


def recombine_generators(X: AffineScheme, seed: int, bound: int = 3) -> Tuple[AffineScheme, List[List[int]]]:
    """Replace the generators by a seeded random invertible integer combination; returns the matrix too."""
    rng = random.Random(seed)
    m = X.m
    while True:
        mat = [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(m)]
        if _int_det(mat) != 0:
            break
    gens = []
    for row in mat:
        acc = MultiPolynomial(X.N)
        for c, f in zip(row, X.generators):
            if c:
                acc = acc + f * c
        gens.append(acc)
    if any(g.is_zero() for g in gens):
        return recombine_generators(X, seed + 1, bound)
    return X.with_generators(gens), mat


def _int_det(mat: List[List[int]]) -> int:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    return sum(
        (-1) ** j * mat[0][j] * _int_det([row[:j] + row[j + 1:] for row in mat[1:]]) for j in range(n)
    )


def sub_presentations(X: AffineScheme, size: int) -> List[Tuple[int, ...]]:
    return list(combinations(range(X.m), size))
