"""Laurent polynomials in L, the counting shadow of classes in the Grothendieck ring."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union


class LaurentPolynomialL:
    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None) -> None:
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean: Dict[int, int] = {}
        for e, c in items:
            clean[int(e)] = clean.get(int(e), 0) + int(c)
        self._terms = tuple(sorted((e, c) for e, c in clean.items() if c))

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[int]]) -> "LaurentPolynomialL":
        return cls((e, c) for e, c in pairs)

    @classmethod
    def L(cls) -> "LaurentPolynomialL":
        return cls({1: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPolynomialL":
        return cls({0: c})

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def to_pairs(self) -> List[List[int]]:
        return [[e, c] for e, c in self._terms]

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other) -> "LaurentPolynomialL":
        if isinstance(other, int):
            other = LaurentPolynomialL.const(other)
        return LaurentPolynomialL(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomialL":
        return LaurentPolynomialL((e, -c) for e, c in self._terms)

    def __sub__(self, other) -> "LaurentPolynomialL":
        if isinstance(other, int):
            other = LaurentPolynomialL.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomialL":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPolynomialL":
        if isinstance(other, int):
            other = LaurentPolynomialL.const(other)
        out: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomialL(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomialL":
        if k < 0:
            # only the units +-L^e are invertible in Z[L, L^-1]
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError(f"{self} is not a unit; negative powers need +-L^e")
            e, c = self._terms[0]
            return LaurentPolynomialL({e * k: c ** k if k % 2 == 0 else c})
        out = LaurentPolynomialL.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomialL.const(other)
        if not isinstance(other, LaurentPolynomialL):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def evaluate(self, q: Union[int, Fraction]) -> Union[int, Fraction]:
        total = Fraction(0)
        for e, c in self._terms:
            total += c * Fraction(q) ** e
        return int(total) if total.denominator == 1 else total

    def at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in reversed(self._terms):
            mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
            mag = abs(c)
            s = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            out.append(s if not out and c > 0 else (f"-{s}" if not out else f" {sign} {s}"))
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPolynomialL({str(self)!r})"
