"""Motivic zeta function from resolution data, its counting specialization,
and its bivariate rational form in (L, t).

Each stratum (J, [E_J]) contributes
    [E_J] * prod_{j in J} (L-1) L^a_j t^N_j / (1 - L^a_j t^N_j),   a_j = delta N_j - nu_j.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple, Union

from ..rings.laurent import LaurentPolynomialL
from ..rings.ratfunc import QPoly, RationalFunctionS
from .resolution import ResolutionData, validate


class MissingClasses(ValueError):
    pass


@dataclass
class MotivicZetaExpr:
    delta: int
    terms: List[Tuple[LaurentPolynomialL, List[Tuple[int, int]]]]  # (class, [(N, a)])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c, _ in self.terms)


def motivic_zeta(res: ResolutionData) -> MotivicZetaExpr:
    if res.strata and not res.has_classes:
        missing = [sorted(s.J) for s in res.strata if s.klass is None]
        raise MissingClasses(f"strata without classes: {missing}")
    rep = validate(res)
    if not rep.passed:
        raise ValueError("invalid resolution data: " + "; ".join(rep.failures))
    terms = []
    for s in res.strata:
        factors = []
        for j in sorted(s.J):
            N, nu = res.divisors[j - 1]
            factors.append((N, res.delta * N - nu))
        terms.append((s.klass, factors))
    return MotivicZetaExpr(res.delta, terms)


def _series_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    K = len(a)
    out = [Fraction(0)] * K
    for i, x in enumerate(a):
        if x:
            for j in range(K - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def motivic_series(expr: MotivicZetaExpr, q: int, order: int) -> List[int]:
    """Coefficients c_0..c_order of Z(t) with L := q."""
    K = order + 1
    total = [Fraction(0)] * K
    for klass, factors in expr.terms:
        cur = [Fraction(0)] * K
        cur[0] = Fraction(klass.evaluate(q))
        for N, a in factors:
            geo = [Fraction(0)] * K
            k = 1
            while N * k < K:
                geo[N * k] = Fraction((q - 1) * q ** (a * k))
                k += 1
            cur = _series_mul(cur, geo)
        total = [x + y for x, y in zip(total, cur)]
    out = []
    for x in total:
        if x.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {x}")
        out.append(int(x))
    return out


Monomial = Tuple[int, int]  # (L exponent, t exponent)


def _bmul(a: Dict[Monomial, int], b: Dict[Monomial, int]) -> Dict[Monomial, int]:
    out: Dict[Monomial, int] = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


@dataclass
class BivariateRational:
    """numerator(L, t) / prod (1 - L^a t^N) over the template factors (with repetition)."""

    numerator: Dict[Monomial, int]
    denominator: List[Tuple[int, int]]  # (a, N)
    delta: int = 0

    def template(self) -> List[Tuple[int, int]]:
        return list(self.denominator)

    def series(self, q: int, order: int) -> List[int]:
        K = order + 1
        num = [Fraction(0)] * K
        for (i, j), c in self.numerator.items():
            if j < K:
                num[j] += c * Fraction(q) ** i
        for a, N in self.denominator:
            inv = [Fraction(0)] * K
            k = 0
            while N * k < K:
                inv[N * k] = Fraction(q) ** (a * k)
                k += 1
            num = _series_mul(num, inv)
        out = []
        for x in num:
            if x.denominator != 1:
                raise ArithmeticError(f"non-integral coefficient {x}")
            out.append(int(x))
        return out

    def numerator_in_t(self, q: int) -> List[int]:
        deg = max((j for _, j in self.numerator), default=-1)
        out = [Fraction(0)] * (deg + 1)
        for (i, j), c in self.numerator.items():
            out[j] += c * Fraction(q) ** i
        return [int(x) for x in out]

    def to_dict(self) -> dict:
        terms = sorted(self.numerator.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        return {
            "numerator": [[i, j, c] for (i, j), c in terms],
            "denominator": [[a, N] for a, N in self.denominator],
            "format": "sum c * L^i * t^j over [i, j, c]; denominator prod (1 - L^a t^N) over [a, N]",
        }

    def __str__(self) -> str:
        return format_bivariate(self)


def _fmt_mono(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("L" if i == 1 else f"L^{i}")
    if j:
        parts.append("t" if j == 1 else f"t^{j}")
    return "*".join(parts)


def format_bivariate(Z: BivariateRational) -> str:
    terms = sorted(Z.numerator.items(), key=lambda kv: (kv[0][1], -kv[0][0]))
    out = ""
    for (i, j), c in terms:
        mono = _fmt_mono(i, j)
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out = body if c > 0 else f"-{body}"
        else:
            out += f" + {body}" if c > 0 else f" - {body}"
    num = out or "0"
    counts = Counter(Z.denominator)
    dens = []
    for (a, N), k in sorted(counts.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        mono = _fmt_mono(a, N)
        f = f"(1 - {mono})"
        dens.append(f if k == 1 else f"{f}^{k}")
    if not dens:
        return num
    return f"({num})/({'*'.join(dens)})"


def to_bivariate(expr: MotivicZetaExpr) -> BivariateRational:
    """Put the expression over the common denominator prod (1 - L^a t^N)^{max multiplicity}."""
    need: Counter = Counter()
    for _, factors in expr.terms:
        cnt = Counter((a, N) for N, a in factors)
        for key, k in cnt.items():
            need[key] = max(need[key], k)
    template = sorted(need.elements(), key=lambda x: (x[1], x[0]))
    num: Dict[Monomial, int] = {}
    for klass, factors in expr.terms:
        cur = {(e, 0): c for e, c in klass.terms.items()}
        left = Counter(template)
        for N, a in factors:
            cur = _bmul(cur, {(a + 1, N): 1, (a, N): -1})
            left[(a, N)] -= 1
        for (a, N), k in left.items():
            for _ in range(k):
                cur = _bmul(cur, {(0, 0): 1, (a, N): -1})
        for key, c in cur.items():
            num[key] = num.get(key, 0) + c
    num = {k: v for k, v in num.items() if v}
    return BivariateRational(num, template, expr.delta)


class PoleMarker:
    """Returned by top_from_motivic when s is a pole."""

    def __init__(self, s: Fraction) -> None:
        self.s = s

    def __eq__(self, other) -> bool:
        return isinstance(other, PoleMarker) and other.s == self.s

    def __repr__(self) -> str:
        return f"PoleMarker({self.s})"

    def __str__(self) -> str:
        return "pole"


class IndeterminateForm(ArithmeticError):
    pass


def _divide_by_u_minus_1(coeffs: List[int]) -> Union[List[int], None]:
    """Exact division of sum c_k u^k by (u - 1), or None if u = 1 is not a root."""
    if sum(coeffs) != 0:
        return None
    out = [0] * (len(coeffs) - 1)
    acc = 0
    for k in range(len(coeffs) - 1, 0, -1):
        acc += coeffs[k]
        out[k - 1] = acc
    return out


def top_from_motivic(Z: BivariateRational, delta: int, s: Union[Fraction, int, str]) -> Union[Fraction, PoleMarker]:
    """Z_top(s) as the u -> 1 limit of Z under L = u^b, t = u^(-a - b delta), s = a/b."""
    s = Fraction(s)
    a, b = s.numerator, s.denominator
    ks = [b * A - N * (a + b * delta) for A, N in Z.denominator]
    if any(k == 0 for k in ks):
        return _top_symbolic_value(Z, delta, s)
    exps = {(i, j): b * i - j * (a + b * delta) for (i, j) in Z.numerator}
    if not exps:
        return Fraction(0)
    lo = min(exps.values())
    hi = max(exps.values())
    poly = [0] * (hi - lo + 1)
    for key, c in Z.numerator.items():
        poly[exps[key] - lo] += c
    for _ in range(len(ks)):
        nxt = _divide_by_u_minus_1(poly)
        if nxt is None:
            return PoleMarker(s)
        poly = nxt
    value = Fraction(sum(poly))
    for k in ks:
        # (1 - u^k) / (u - 1) -> -k at u = 1
        value /= -k
    return value


def _h_coefficients(Z: BivariateRational, delta: int, upto: int):
    """Coefficients (as polynomials in s) of h^0..h^upto in numerator(e^h, e^{-h(s+delta)}) * k!."""
    out = []
    for k in range(upto + 1):
        acc = QPoly()
        for (i, j), c in Z.numerator.items():
            lin = QPoly([i - j * delta, -j])  # i - j (s + delta)
            acc = acc + (lin ** k) * c
        out.append(acc)
    return out


def top_rational_from_motivic(Z: BivariateRational, delta: int):
    """Z_top as a rational function in s, via the h-expansion with L = e^h."""
    D = len(Z.denominator)
    coeffs = _h_coefficients(Z, delta, D)
    for k in range(D):
        if not coeffs[k].is_zero():
            raise IndeterminateForm(f"numerator does not vanish to order {D} at L = 1 (order {k})")
    num = coeffs[D] * Fraction(1, factorial(D))
    den = QPoly([1])
    for A, N in Z.denominator:
        den = den * QPoly([delta * N - A, N])  # nu + N s
    return RationalFunctionS(num, den)


def _top_symbolic_value(Z: BivariateRational, delta: int, s: Fraction) -> Union[Fraction, PoleMarker]:
    z = top_rational_from_motivic(Z, delta)
    try:
        return z(s)
    except ZeroDivisionError:
        return PoleMarker(s)
