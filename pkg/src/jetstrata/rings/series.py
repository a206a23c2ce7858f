"""Elements of F_p[t]/(t^M).

A :class:`TruncatedSeries` stores exactly ``M`` coefficients. Every
operation is exact in the quotient ring; nothing at index >= M is ever
computed. The zero class has valuation :class:`AtLeast` ``(M)`` rather than
the integer ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union


class ModulusMismatch(ValueError):
    pass


class NotAUnit(ArithmeticError):
    pass


@dataclass(frozen=True)
class AtLeast:
    """Valuation marker for the zero class of F[t]/(t^M): order >= bound."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


Valuation = Union[int, AtLeast]


def valuation_value(v: Valuation) -> int:
    """Collapse a valuation to an int, mapping ``AtLeast(M)`` to ``M``."""
    return v.bound if isinstance(v, AtLeast) else v


@dataclass(frozen=True)
class TruncatedSeries:
    p: int
    modulus: int
    coeffs: Tuple[int, ...]

    def __init__(self, p: int, modulus: int, coeffs: Iterable[int] = ()) -> None:
        if modulus < 0:
            raise ValueError("modulus must be nonnegative")
        c = [x % p for x in list(coeffs)[:modulus]]
        c.extend([0] * (modulus - len(c)))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls, p: int, modulus: int) -> "TruncatedSeries":
        return cls(p, modulus)

    @classmethod
    def one(cls, p: int, modulus: int) -> "TruncatedSeries":
        return cls(p, modulus, [1])

    @classmethod
    def monomial(cls, p: int, modulus: int, coeff: int, degree: int) -> "TruncatedSeries":
        c = [0] * modulus
        if degree < modulus:
            c[degree] = coeff
        return cls(p, modulus, c)

    @classmethod
    def constant(cls, p: int, modulus: int, c: int) -> "TruncatedSeries":
        return cls(p, modulus, [c])

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.p != self.p or other.modulus != self.modulus:
            raise ModulusMismatch(
                f"F_{self.p}[t]/(t^{self.modulus}) vs F_{other.p}[t]/(t^{other.modulus})"
            )

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.modulus

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.p, self.modulus, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.p, self.modulus, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.p, self.modulus, [-a for a in self.coeffs])

    def __mul__(self, other: Union["TruncatedSeries", int]) -> "TruncatedSeries":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return TruncatedSeries(self.p, self.modulus, mul_coeffs(self.coeffs, other.coeffs, self.modulus, self.p))

    __rmul__ = __mul__

    def scale(self, c: int) -> "TruncatedSeries":
        return TruncatedSeries(self.p, self.modulus, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k."""
        return TruncatedSeries(self.p, self.modulus, (0,) * k + self.coeffs)

    def div_t(self, k: int) -> "TruncatedSeries":
        """Exact division by t^k; the top k coefficients of the quotient are set to 0.

        The quotient is only determined modulo t^(M-k); padding with zeros
        picks one representative.
        """
        v = valuation_value(self.valuation())
        if v < k:
            raise ArithmeticError(f"order {v} < {k}: not divisible by t^{k}")
        return TruncatedSeries(self.p, self.modulus, self.coeffs[k:])

    def valuation(self) -> Valuation:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return AtLeast(self.modulus)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.modulus > 0 and self.coeffs[0] != 0

    def unit_inverse(self) -> "TruncatedSeries":
        if not self.is_unit():
            raise NotAUnit(f"{self} has zero constant term")
        p, M = self.p, self.modulus
        a = self.coeffs
        inv0 = pow(a[0], -1, p)
        b = [0] * M
        b[0] = inv0
        for k in range(1, M):
            s = 0
            for i in range(1, k + 1):
                if a[i]:
                    s += a[i] * b[k - i]
            b[k] = -s * inv0 % p
        return TruncatedSeries(p, M, b)

    def unit_part(self) -> "TruncatedSeries":
        """The unit u with self = t^v * u (u padded by zeros above M - v)."""
        v = self.valuation()
        if isinstance(v, AtLeast):
            raise NotAUnit("the zero class has no unit part")
        return TruncatedSeries(self.p, self.modulus, self.coeffs[v:])

    def truncate(self, modulus: int) -> "TruncatedSeries":
        """Reduce (or zero-extend) to F_p[t]/(t^modulus)."""
        return TruncatedSeries(self.p, modulus, self.coeffs)

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "t" if k == 1 else f"t^{k}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} mod t^{self.modulus}"


def mul_coeffs(a: Sequence[int], b: Sequence[int], modulus: int, p: int) -> list:
    out = [0] * modulus
    for i, x in enumerate(a):
        if not x or i >= modulus:
            continue
        lim = modulus - i
        for j, y in enumerate(b[:lim]):
            if y:
                out[i + j] += x * y
    return [c % p for c in out]


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def series_valuation(a: TruncatedSeries) -> Valuation:
    return a.valuation()


def series_unit_inverse(a: TruncatedSeries) -> TruncatedSeries:
    return a.unit_inverse()
