"""Jacobian invariants of jets and arcs, stratification and fiber checks.

All fibration statements are checked through fiber cardinalities over
F_p, which is an empirical specialization of the geometric statements.
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .dvr import SeriesMatrix, cokernel_exponents_raw
from .jets import DEFAULT_BUDGET, AffineScheme, Jet, count_jets, enumerate_jets, verify_jet
from .rings.poly import eval_coeffs

UNSTABLE = "unstable"
EMPIRICAL = "empirical specialization: cardinality check over F_p"


class HypothesisViolated(ValueError):
    def __init__(self, condition: str, detail: str = "") -> None:
        self.condition = condition
        super().__init__(f"hypothesis violated: {condition}" + (f" ({detail})" if detail else ""))


def threshold(n: int) -> int:
    """g = n/2 for even n, (n+1)/2 for odd n."""
    return (n + 1) // 2


def _jacobian_raw(X: AffineScheme, coords: Sequence[Sequence[int]], p: int, M: int):
    pts = [(list(c) + [0] * M)[:M] for c in coords]
    return [[eval_coeffs(d, pts, M, p) for d in row] for row in X.partials]


def jacobian_matrix(X: AffineScheme, theta: Jet) -> SeriesMatrix:
    M = theta.n + 1
    return SeriesMatrix._wrap(theta.p, M, _jacobian_raw(X, theta.coords, theta.p, M), X.N)


@dataclass(frozen=True, order=True)
class StratumKey:
    n: int
    exponents: Tuple[int, ...]  # e_1..e_b, all < g

    @property
    def b(self) -> int:
        return len(self.exponents)

    def __str__(self) -> str:
        body = ",".join(map(str, self.exponents)) or "-"
        return f"n={self.n}:b={self.b}:e=({body})"

    def to_dict(self) -> dict:
        return {"n": self.n, "b": self.b, "e": list(self.exponents)}


@dataclass(frozen=True)
class JetInvariants:
    n: int
    exponents: Tuple[int, ...]
    g: int
    b: int
    e: Union[int, str]

    @property
    def key(self) -> StratumKey:
        return StratumKey(self.n, self.exponents[: self.b])


def invariants_from_exponents(exps: Sequence[int], n: int, r: int) -> JetInvariants:
    g = threshold(n)
    b = sum(1 for x in exps if x < g)
    head = exps[:r]
    e: Union[int, str] = UNSTABLE if any(x >= n + 1 for x in head) else sum(head)
    return JetInvariants(n, tuple(exps), g, b, e)


def jet_exponents(X: AffineScheme, theta: Jet) -> List[int]:
    M = theta.n + 1
    return cokernel_exponents_raw(_jacobian_raw(X, theta.coords, theta.p, M), theta.p, M, X.N)


def jet_invariants(X: AffineScheme, theta: Jet, check: bool = True) -> JetInvariants:
    if check and not verify_jet(X, theta):
        raise ValueError(f"{theta} is not a jet on {X}")
    return invariants_from_exponents(jet_exponents(X, theta), theta.n, X.r)


@dataclass(frozen=True)
class ArcInvariants:
    modulus: int
    exponents: Tuple[int, ...]
    exact: Tuple[bool, ...]  # False means the true value is >= modulus
    p_count: int

    def labels(self) -> List[str]:
        return [str(e) if ok else f">={self.modulus}" for e, ok in zip(self.exponents, self.exact)]


def arc_invariants(X: AffineScheme, coords: Sequence[Sequence[int]], p: int, modulus: int) -> ArcInvariants:
    """Invariant factors of an arc prefix's Jacobian, computed mod t^modulus."""
    pts = [(list(c) + [0] * modulus)[:modulus] for c in coords]
    for f in X.generators:
        if any(eval_coeffs(f, pts, modulus, p)):
            raise ValueError("generators do not vanish on the arc prefix")
    exps = cokernel_exponents_raw(_jacobian_raw(X, coords, p, modulus), p, modulus, X.N)
    exact = tuple(e < modulus for e in exps)
    return ArcInvariants(modulus, tuple(exps), exact, sum(exact))


def stratify(X: AffineScheme, jets: Iterable[Jet], n: int) -> Dict[StratumKey, List[Jet]]:
    out: Dict[StratumKey, List[Jet]] = {}
    for theta in jets:
        if theta.n != n:
            raise ValueError(f"jet at level {theta.n}, expected {n}")
        key = jet_invariants(X, theta, check=False).key
        out.setdefault(key, []).append(theta)
    return out


# -- fiber checks ---------------------------------------------------------

MODES = ("complete-intersection", "reduced", "b-stratum")


def stepwise_dimension(N: int, exps: Sequence[int], n: int, l: int) -> int:
    """sum_{l'=l}^{n-1} (N - a(l')), a(l') the largest a with e_a < n - l'."""
    total = 0
    for lp in range(l, n):
        a = sum(1 for e in exps if e < n - lp)
        total += N - a
    return total


def expected_dimension(X: AffineScheme, key: StratumKey, l: int, mode: str) -> int:
    """Fiber dimension predicted for the stratum, raising HypothesisViolated when it does not apply."""
    n, exps, b = key.n, key.exponents, key.b
    N = X.N
    if not n > l:
        raise HypothesisViolated("n > l", f"n={n}, l={l}")
    if mode == "complete-intersection":
        m = X.m
        if m > N:
            raise HypothesisViolated("m <= N", f"m={m}, N={N}")
        if b != m:
            raise HypothesisViolated("b = m", f"b={b}, m={m}")
        em = exps[-1] if exps else 0
        if l < em:
            raise HypothesisViolated("l >= e_m", f"l={l}, e_m={em}")
        if l > n - em:
            raise HypothesisViolated("l <= n - e_m", f"l={l}, n-e_m={n - em}")
        return (N - m) * (n - l) + sum(exps)
    if mode == "reduced":
        r = X.r
        if b != r:
            raise HypothesisViolated("b = r", f"b={b}, r={r}")
        er = exps[-1] if exps else 0
        e = sum(exps)
        if n < max(2 * er, e):
            raise HypothesisViolated("n >= max(2 e_r, e)", f"n={n}, 2e_r={2 * er}, e={e}")
        if l < er:
            raise HypothesisViolated("l >= e_r", f"l={l}, e_r={er}")
        if l > n - er:
            raise HypothesisViolated("l <= n - e_r", f"l={l}, n-e_r={n - er}")
        return (n - l) * X.d + e
    if mode == "b-stratum":
        g = threshold(n)
        if l < n - g:
            raise HypothesisViolated("l >= n - g", f"l={l}, n-g={n - g}")
        if b > X.m or b > N:
            raise HypothesisViolated("b <= m and b <= N", f"b={b}, m={X.m}, N={N}")
        return stepwise_dimension(N, exps, n, l)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


@dataclass
class FiberReport:
    key: StratumKey
    n: int
    l: int
    p: int
    mode: str
    dimension: int
    histogram: Dict[int, int]  # fiber size -> number of image points
    jets: int

    @property
    def expected(self) -> int:
        return self.p ** self.dimension

    @property
    def passed(self) -> bool:
        return bool(self.histogram) and set(self.histogram) == {self.expected}

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "stratum": self.key.to_dict(),
            "n": self.n,
            "l": self.l,
            "p": self.p,
            "mode": self.mode,
            "dimension": self.dimension,
            "expected_fiber": self.expected,
            "fiber_histogram": [[k, v] for k, v in sorted(self.histogram.items())],
            "images": sum(self.histogram.values()),
            "jets": self.jets,
            "verdict": self.verdict,
            "note": EMPIRICAL,
        }


def fiber_report(
    X: AffineScheme,
    n: int,
    l: int,
    p: int,
    mode: str,
    stratum: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
    jets: Optional[Iterable[Jet]] = None,
) -> List[FiberReport]:
    """Compare fibers of pi^n_l on strata with the predicted affine-space size.

    With ``stratum`` given (the exponents e_1..e_b), only that stratum is
    checked and a violated hypothesis raises; otherwise every realized
    stratum satisfying the hypotheses is checked.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    want = StratumKey(n, tuple(stratum)) if stratum is not None else None
    if want is not None:
        if any(e >= threshold(n) for e in want.exponents):
            raise HypothesisViolated("e_b < g", f"g={threshold(n)}")
        expected_dimension(X, want, l, mode)
    source = jets if jets is not None else enumerate_jets(X, n, p, budget)
    groups = stratify(X, source, n)
    reports = []
    for key in sorted(groups):
        if want is not None and key != want:
            continue
        try:
            D = expected_dimension(X, key, l, mode)
        except HypothesisViolated:
            continue
        fibers: Dict[Jet, int] = defaultdict(int)
        for theta in groups[key]:
            fibers[theta.truncate(l)] += 1
        hist: Dict[int, int] = defaultdict(int)
        for size in fibers.values():
            hist[size] += 1
        reports.append(FiberReport(key, n, l, p, mode, D, dict(hist), len(groups[key])))
    if want is not None and not reports:
        reports.append(FiberReport(want, n, l, p, mode, expected_dimension(X, want, l, mode), {}, 0))
    return reports


# -- divisibility ---------------------------------------------------------


@dataclass
class DivisibilityRow:
    n: int
    count: int
    power: int
    divides: bool


@dataclass
class DivisibilityTable:
    p: int
    mode: str
    rows: List[DivisibilityRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.divides for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "mode": self.mode,
            "rows": [
                {"n": r.n, "count": r.count, "power": r.power, "verdict": "PASS" if r.divides else "FAIL"}
                for r in self.rows
            ],
            "verdict": "PASS" if self.passed else "FAIL",
            "note": EMPIRICAL,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "n", "count", "power", "verdict"])
        for r in self.rows:
            w.writerow([self.p, r.n, r.count, r.power, "PASS" if r.divides else "FAIL"])
        return buf.getvalue()


def _ceil_half(k: int, n: int) -> int:
    return -((-k * n) // 2)


def divisibility_report(
    X: AffineScheme, p: int, n_range: Iterable[int], mode: str, budget: int = DEFAULT_BUDGET
) -> DivisibilityTable:
    """Check p^ceil(k n / 2) | #L_n(X)(F_p) with k = N-m+1 (equations) or d+1 (dimension)."""
    if mode == "equations":
        if not X.m < X.N:
            raise HypothesisViolated("m < N", f"m={X.m}, N={X.N}")
        k = X.N - X.m + 1
    elif mode == "dimension":
        if X.d < 1:
            raise HypothesisViolated("d >= 1", f"d={X.d}")
        k = X.d + 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    table = DivisibilityTable(p, mode)
    for n in n_range:
        c = count_jets(X, n, p, budget)
        power = _ceil_half(k, n)
        table.rows.append(DivisibilityRow(n, c, power, c % p ** power == 0))
    return table
