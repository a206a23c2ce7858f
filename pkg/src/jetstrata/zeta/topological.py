"""Topological zeta function and pole-bound checks."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from ..rings.ratfunc import QPoly, RationalFunctionS, rational_roots
from .resolution import ResolutionData, validate


class NonLinearDenominator(ArithmeticError):
    pass


def topological_zeta(res: ResolutionData) -> RationalFunctionS:
    """sum_J chi(E_J) prod_{j in J} 1/(nu_j + s N_j)."""
    rep = validate(res)
    if not rep.passed:
        raise ValueError("invalid resolution data: " + "; ".join(rep.failures))
    total = RationalFunctionS.const(0)
    for st in res.strata:
        if not st.euler:
            continue
        den = QPoly([1])
        for j in sorted(st.J):
            N, nu = res.divisors[j - 1]
            den = den * QPoly([nu, N])
        total = total + RationalFunctionS(QPoly([st.euler]), den)
    return total


def poles(z: RationalFunctionS) -> List[Tuple[Fraction, int]]:
    roots, rest = rational_roots(z.den)
    if rest.degree() > 0:
        raise NonLinearDenominator("denominator does not split into rational linear factors")
    return roots


def pole_bound_check(
    z: RationalFunctionS, delta: int, m: Optional[int] = None, d: Optional[int] = None
) -> dict:
    """Compare the smallest pole with -delta + (delta-m+1)/2 (equations) or -delta + (d+1)/2 (dimension)."""
    if (m is None) == (d is None):
        raise ValueError("give exactly one of m (equations mode) or d (dimension mode)")
    if m is not None:
        mode = "equations"
        if not m < delta:
            return {"mode": mode, "verdict": "INAPPLICABLE", "hypothesis": "m < delta", "m": m, "delta": delta}
        bound = Fraction(-delta) + Fraction(delta - m + 1, 2)
    else:
        mode = "dimension"
        if not d >= 1:
            return {"mode": mode, "verdict": "INAPPLICABLE", "hypothesis": "d >= 1", "d": d, "delta": delta}
        bound = Fraction(-delta) + Fraction(d + 1, 2)
    ps = poles(z)
    out = {"mode": mode, "bound": bound, "poles": ps}
    if not ps:
        out.update(verdict="PASS", min_pole=None, slack=None, attained=False)
        return out
    lo = min(r for r, _ in ps)
    out.update(
        verdict="PASS" if lo >= bound else "FAIL",
        min_pole=lo,
        slack=lo - bound,
        attained=lo == bound,
    )
    return out
