"""Exact univariate rational functions in s over Q.

Canonical form: numerator and denominator have integer coefficients with
no common polynomial factor and joint content 1, and the denominator has a
positive leading coefficient. Two rational functions are equal iff their
canonical forms are identical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence, Tuple, Union

Number = Union[int, Fraction]


def _trim(c: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class QPoly:
    """Polynomial in s with Fraction coefficients, ascending order."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Number] = ()) -> None:
        self.c = _trim([Fraction(x) for x in coeffs])

    @classmethod
    def s(cls) -> "QPoly":
        return cls([0, 1])

    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Fraction:
        return self.c[-1]

    def __add__(self, o: "QPoly") -> "QPoly":
        n = max(len(self.c), len(o.c))
        a = list(self.c) + [Fraction(0)] * (n - len(self.c))
        b = list(o.c) + [Fraction(0)] * (n - len(o.c))
        return QPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "QPoly":
        return QPoly([-x for x in self.c])

    def __sub__(self, o: "QPoly") -> "QPoly":
        return self + (-o)

    def __mul__(self, o: Union["QPoly", Number]) -> "QPoly":
        if not isinstance(o, QPoly):
            return QPoly([x * o for x in self.c])
        if not self.c or not o.c:
            return QPoly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(o.c):
                out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        out = QPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, o: "QPoly") -> Tuple["QPoly", "QPoly"]:
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(o.c) + 1, 0)
        while len(r) >= len(o.c) and r:
            f = r[-1] / o.c[-1]
            k = len(r) - len(o.c)
            q[k] = f
            for i, y in enumerate(o.c):
                r[k + i] -= f * y
            r = list(_trim(r))
        return QPoly(q), QPoly(r)

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def __eq__(self, o) -> bool:
        return isinstance(o, QPoly) and self.c == o.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"QPoly({[str(x) for x in self.c]})"


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a * (1 / a.lead())


def _int_content_scale(polys: Sequence[QPoly]) -> Fraction:
    """Scale factor making all coefficients integers with joint gcd 1."""
    coeffs = [x for p in polys for x in p.c]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in coeffs), 1)
    nums = [int(x * den) for x in coeffs]
    g = reduce(gcd, nums, 0) or 1
    return Fraction(den, g)


class RationalFunctionS:
    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly = None) -> None:
        if den is None:
            den = QPoly([1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        if num.is_zero():
            den = QPoly([1])
        k = _int_content_scale([num, den])
        if den.lead() * k < 0:
            k = -k
        self.num = num * k
        self.den = den * k

    @classmethod
    def const(cls, c: Number) -> "RationalFunctionS":
        return cls(QPoly([c]))

    @classmethod
    def linear_inverse(cls, a: Number, b: Number) -> "RationalFunctionS":
        """1 / (a + b s)."""
        return cls(QPoly([1]), QPoly([a, b]))

    def __add__(self, o) -> "RationalFunctionS":
        o = _lift(o)
        return RationalFunctionS(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunctionS":
        return RationalFunctionS(-self.num, self.den)

    def __sub__(self, o) -> "RationalFunctionS":
        return self + (-_lift(o))

    def __mul__(self, o) -> "RationalFunctionS":
        o = _lift(o)
        return RationalFunctionS(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o) -> "RationalFunctionS":
        o = _lift(o)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunctionS(self.num * o.den, self.den * o.num)

    def __eq__(self, o) -> bool:
        if isinstance(o, (int, Fraction)):
            o = RationalFunctionS.const(o)
        if not isinstance(o, RationalFunctionS):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, s: Number) -> Fraction:
        d = self.den(s)
        if d == 0:
            raise ZeroDivisionError(f"pole at s = {s}")
        return self.num(s) / d

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def integer_coeffs(self) -> Tuple[List[int], List[int]]:
        return [int(x) for x in self.num.c], [int(x) for x in self.den.c]

    def __str__(self) -> str:
        return format_rational(self)

    def __repr__(self) -> str:
        return f"RationalFunctionS({format_rational(self)!r})"


def _lift(o) -> RationalFunctionS:
    if isinstance(o, RationalFunctionS):
        return o
    if isinstance(o, (int, Fraction)):
        return RationalFunctionS.const(o)
    if isinstance(o, QPoly):
        return RationalFunctionS(o)
    raise TypeError(f"cannot combine RationalFunctionS with {type(o).__name__}")


def rational_arith(a: RationalFunctionS, b: RationalFunctionS, op: str) -> RationalFunctionS:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(poly: QPoly) -> Tuple[List[Tuple[Fraction, int]], QPoly]:
    """Rational roots with multiplicity, plus the cofactor without rational roots."""
    roots: List[Tuple[Fraction, int]] = []
    rest = poly
    while rest.degree() > 0 and rest.c[0] == 0:
        rest = rest.divmod(QPoly([0, 1]))[0]
        if roots and roots[-1][0] == 0:
            roots[-1] = (Fraction(0), roots[-1][1] + 1)
        else:
            roots.append((Fraction(0), 1))
    if rest.degree() > 0:
        scale = _int_content_scale([rest])
        ints = [int(x * scale) for x in rest.c]
        cands = set()
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                cands.add(Fraction(a, b))
                cands.add(Fraction(-a, b))
        for r in sorted(cands):
            mult = 0
            while rest.degree() > 0 and rest(r) == 0:
                rest = rest.divmod(QPoly([-r, 1]))[0]
                mult += 1
            if mult:
                roots.append((r, mult))
    roots.sort()
    return roots, rest


def _fmt_linear(root: Fraction) -> str:
    # factor (b + a s) vanishing at root = -b/a, primitive with a > 0
    a, b = root.denominator, -root.numerator
    if b == 0:
        return "s"
    lin = "s" if a == 1 else f"{a}s"
    return f"{b}+{lin}" if b > 0 else f"{lin}-{-b}"


def _fmt_poly(ints: Sequence[int]) -> str:
    parts = []
    for k, c in enumerate(ints):
        if c == 0:
            continue
        mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts) or "0"


def format_rational(z: RationalFunctionS) -> str:
    """Human-readable form, e.g. ``(4+s)/(2+s)^2`` or ``(10+3s)/((5+2s)(2+s))``."""
    num, den = z.integer_coeffs()
    num_s = _fmt_poly(num)
    if den == [1]:
        return num_s
    if sum(1 for c in num if c) > 1:
        num_s = f"({num_s})"
    roots, rest = rational_roots(z.den)
    factors = []
    for r, k in roots:
        lin = _fmt_linear(r)
        f = lin if lin == "s" else f"({lin})"
        factors.append(f if k == 1 else f"{f}^{k}")
    if rest.degree() > 0:
        # leftover irreducible part: print in expanded integer form
        k = _int_content_scale([rest])
        factors.append(f"({_fmt_poly([int(x * k) for x in rest.c])})")
    lead = Fraction(den[-1])
    for r, k in roots:
        lead /= r.denominator ** k
    if rest.degree() > 0:
        lead /= rest.lead() * _int_content_scale([rest])
    prefix = "" if lead == 1 else f"{lead}"
    den_s = prefix + "".join(factors)
    if len(factors) > 1 or prefix or (factors and "^" in factors[0] and len(factors) > 1):
        den_s = f"({den_s})" if (len(factors) > 1 or prefix) else den_s
    return f"{num_s}/{den_s}"
