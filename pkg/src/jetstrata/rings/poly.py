"""Integer-coefficient multivariate polynomials.

Coefficients are arbitrary-precision ints and are reduced mod p only at
evaluation time, so one presentation of a scheme serves every prime.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .series import ModulusMismatch, TruncatedSeries, mul_coeffs

Monomial = Tuple[int, ...]


def _grlex_key(exp: Monomial) -> Tuple[int, Monomial]:
    return (sum(exp), exp)


class MultiPolynomial:
    """Immutable polynomial in ``nvars`` variables with integer coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, int]] = None) -> None:
        clean: Dict[Monomial, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = tuple(sorted(clean.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True))
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MultiPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPolynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Tuple[Tuple[Monomial, int], ...]:
        """Terms in descending graded-lex order."""
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e, _ in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e, _ in self._terms), default=0)

    def variables(self) -> Tuple[int, ...]:
        used = set()
        for e, _ in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(sorted(used))

    def _coerce(self, other) -> "MultiPolynomial":
        if isinstance(other, int):
            return MultiPolynomial.constant(self.nvars, other)
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other) -> "MultiPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = self.terms
        for e, c in other._terms:
            t[e] = t.get(e, 0) + c
        return MultiPolynomial(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "MultiPolynomial":
        return MultiPolynomial(self.nvars, {e: -c for e, c in self._terms})

    def __sub__(self, other) -> "MultiPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "MultiPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: Dict[Monomial, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPolynomial(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPolynomial":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPolynomial.constant(self.nvars, other)
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self._terms))
        return self._hash

    def partial(self, j: int) -> "MultiPolynomial":
        """Formal derivative with respect to variable ``j`` (0-based)."""
        if not 0 <= j < self.nvars:
            raise IndexError(f"variable index {j} out of range for {self.nvars} variables")
        t: Dict[Monomial, int] = {}
        for e, c in self._terms:
            if e[j]:
                ne = list(e)
                ne[j] -= 1
                t[tuple(ne)] = t.get(tuple(ne), 0) + c * e[j]
        return MultiPolynomial(self.nvars, t)

    def eval_mod(self, point: Sequence[int], p: int) -> int:
        if len(point) != self.nvars:
            raise ValueError(f"arity mismatch: point has {len(point)} coordinates, need {self.nvars}")
        total = 0
        for e, c in self._terms:
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * pow(x, k, p) % p
            total += term
        return total % p

    def eval_series(self, point: Sequence[TruncatedSeries]) -> TruncatedSeries:
        if len(point) != self.nvars:
            raise ValueError(f"arity mismatch: point has {len(point)} coordinates, need {self.nvars}")
        if not point:
            raise ValueError("cannot infer modulus from an empty point")
        p, M = point[0].p, point[0].modulus
        for s in point:
            if s.p != p or s.modulus != M:
                raise ModulusMismatch("evaluation point mixes rings")
        coeffs = eval_coeffs(self, [s.coeffs for s in point], M, p)
        return TruncatedSeries(p, M, coeffs)

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        names = list(names) if names else [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        out = []
        for e, c in self._terms:
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            mono = "*".join(factors)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            if not out:
                out.append(s if c > 0 else f"-{s}")
            else:
                out.append(f"+ {s}" if c > 0 else f"- {s}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"MultiPolynomial({self.to_string()!r})"


def eval_coeffs(
    f: MultiPolynomial, point: Sequence[Sequence[int]], modulus: int, p: int
) -> list:
    """Evaluate ``f`` at coefficient lists, truncated mod t^modulus, over F_p."""
    powers = []
    for i, x in enumerate(point):
        d = f.degree_in(i)
        pw = [[1] + [0] * (modulus - 1)] if modulus else [[]]
        for _ in range(d):
            pw.append(mul_coeffs(pw[-1], x, modulus, p))
        powers.append(pw)
    total = [0] * modulus
    for e, c in f.items():
        c %= p
        if not c:
            continue
        acc = None
        for i, k in enumerate(e):
            if k:
                acc = powers[i][k] if acc is None else mul_coeffs(acc, powers[i][k], modulus, p)
        if acc is None:
            if modulus:
                total[0] += c
        else:
            for i, a in enumerate(acc):
                if a:
                    total[i] += c * a
    return [x % p for x in total]


def poly_eval_series(f: MultiPolynomial, point: Sequence[TruncatedSeries]) -> TruncatedSeries:
    return f.eval_series(point)


def poly_partial(f: MultiPolynomial, j: int) -> MultiPolynomial:
    """Partial derivative in the j-th variable, 1-based (1 <= j <= N)."""
    if not 1 <= j <= f.nvars:
        raise IndexError(f"variable index {j} outside 1..{f.nvars}")
    return f.partial(j - 1)


def from_terms(nvars: int, terms: Iterable[Tuple[Sequence[int], int]]) -> MultiPolynomial:
    t: Dict[Monomial, int] = {}
    for e, c in terms:
        t[tuple(e)] = t.get(tuple(e), 0) + c
    return MultiPolynomial(nvars, t)
