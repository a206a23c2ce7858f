"""Rebuild a bivariate motivic zeta function from contact counts over several primes.

For each prime q the denominator prod (1 - q^a t^N) is fixed by the
template, so the numerator is c(t) * Den(t) truncated; its higher
coefficients must vanish (at least two surplus coefficients are demanded
as a consistency check).  Numerator coefficients are then interpolated as
integer polynomials in q.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .motivic import BivariateRational

MARGIN = 2


class InconsistentFit(ValueError):
    pass


class InterpolationFailure(ValueError):
    pass


def _times_denominator(c: Sequence[int], q: int, template: Sequence[Tuple[int, int]]) -> List[int]:
    K = len(c)
    out = list(c)
    for a, N in template:
        nxt = list(out)
        f = q ** a
        for k in range(N, K):
            nxt[k] -= f * out[k - N]
        out = nxt
    return out


def fit_numerator(
    coeffs: Sequence[int], q: int, template: Sequence[Tuple[int, int]], degree: Optional[int] = None
) -> List[int]:
    """Numerator coefficients in t for one prime; raises InconsistentFit."""
    B = _times_denominator(coeffs, q, template)
    K = len(B)
    last = max((k for k, v in enumerate(B) if v), default=-1)
    if degree is None:
        degree = max(last, 0)
    elif last > degree:
        raise InconsistentFit(f"q={q}: coefficient t^{last} of the numerator is nonzero, degree bound {degree}")
    if K - 1 - degree < MARGIN:
        raise InconsistentFit(
            f"q={q}: only {K - 1 - degree} surplus coefficients (need {MARGIN}); supply more levels"
        )
    return B[: degree + 1]


def _interpolate(xs: Sequence[int], ys: Sequence[int], degree: int) -> List[Fraction]:
    """Coefficients (ascending) of the degree-<=deg polynomial through the first deg+1 points."""
    pts = list(zip(xs, ys))[: degree + 1]
    coeffs = [Fraction(0)] * (degree + 1)
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    return coeffs


def reconstruct_motivic(
    counts: Mapping[Tuple[int, int], int],
    template: Sequence[Tuple[int, int]],
    degree: Optional[int] = None,
    q_degree: Optional[int] = None,
    delta: int = 0,
) -> BivariateRational:
    """Inverse of motivic_series on expressions fitting ``template`` [(a_j, N_j)]."""
    primes = sorted({q for q, _ in counts})
    if not primes:
        raise ValueError("no counts given")
    if q_degree is None:
        q_degree = len(primes) - 1
    if len(primes) < q_degree + 1:
        raise InterpolationFailure(f"need at least {q_degree + 1} primes, got {len(primes)}")
    series: Dict[int, List[int]] = {}
    for q in primes:
        ns = sorted(n for qq, n in counts if qq == q)
        if ns != list(range(len(ns))):
            raise ValueError(f"q={q}: counts must cover n = 0..K without gaps")
        series[q] = [counts[(q, n)] for n in ns]
    # smallest consistent degree per prime, then the common maximum
    if degree is None:
        degree = max(len(fit_numerator(series[q], q, template)) - 1 for q in primes)
    fits = {q: fit_numerator(series[q], q, template, degree) for q in primes}
    numerator: Dict[Tuple[int, int], int] = {}
    for j in range(degree + 1):
        ys = [fits[q][j] for q in primes]
        poly = _interpolate(primes, ys, q_degree)
        for q, y in zip(primes, ys):
            val = sum(c * Fraction(q) ** i for i, c in enumerate(poly))
            if val != y:
                raise InterpolationFailure(f"t^{j}: value at q={q} is {y}, interpolant gives {val}")
        for i, c in enumerate(poly):
            if c.denominator != 1:
                raise InterpolationFailure(f"t^{j}: coefficient of q^{i} is {c}, not an integer")
            if c:
                numerator[(i, j)] = int(c)
    return BivariateRational(numerator, list(template), delta)
