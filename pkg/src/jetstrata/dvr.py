"""Linear algebra over F_p[t]/(t^M).

Internally matrices are lists of rows of raw coefficient lists (length M,
entries reduced mod p); ``SeriesMatrix`` wraps them for the public API.
Every nonzero element factors as t^v * unit, so elimination only ever
divides by units.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from .rings.series import TruncatedSeries, mul_coeffs

Coeffs = List[int]
RawMatrix = List[List[Coeffs]]


def _val(a: Sequence[int]) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    return len(a)


def _unit_inverse(a: Sequence[int], p: int) -> Coeffs:
    M = len(a)
    inv0 = pow(a[0], -1, p)
    b = [0] * M
    b[0] = inv0
    for k in range(1, M):
        s = 0
        for i in range(1, k + 1):
            if a[i]:
                s += a[i] * b[k - i]
        b[k] = -s * inv0 % p
    return b


def _axpy(y: Coeffs, q: Sequence[int], x: Sequence[int], p: int) -> Coeffs:
    """y - q*x."""
    M = len(y)
    prod_ = mul_coeffs(q, x, M, p)
    return [(a - b) % p for a, b in zip(y, prod_)]


def _div_t(a: Sequence[int], v: int) -> Coeffs:
    return list(a[v:]) + [0] * v


def _identity(n: int, M: int) -> RawMatrix:
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = [0] * M
            if i == j and M:
                e[0] = 1
            row.append(e)
        out.append(row)
    return out


def _copy(A: RawMatrix) -> RawMatrix:
    return [[list(e) for e in row] for row in A]


class SeriesMatrix:
    """Rectangular matrix of TruncatedSeries sharing p and M."""

    __slots__ = ("p", "modulus", "nrows", "ncols", "_raw")

    def __init__(self, p: int, modulus: int, rows: Sequence[Sequence]) -> None:
        raw = []
        width = None
        for row in rows:
            r = []
            for e in row:
                if isinstance(e, TruncatedSeries):
                    if e.p != p or e.modulus != modulus:
                        raise ValueError("entries must share the field and modulus")
                    r.append(list(e.coeffs))
                elif isinstance(e, int):
                    r.append(list(TruncatedSeries.constant(p, modulus, e).coeffs))
                else:
                    r.append(list(TruncatedSeries(p, modulus, e).coeffs))
            if width is None:
                width = len(r)
            elif len(r) != width:
                raise ValueError("ragged matrix")
            raw.append(r)
        self.p = p
        self.modulus = modulus
        self.nrows = len(raw)
        self.ncols = width or 0
        self._raw = raw

    @classmethod
    def _wrap(cls, p: int, M: int, raw: RawMatrix, ncols: Optional[int] = None) -> "SeriesMatrix":
        obj = cls.__new__(cls)
        obj.p, obj.modulus, obj._raw = p, M, raw
        obj.nrows = len(raw)
        obj.ncols = len(raw[0]) if raw else (ncols or 0)
        return obj

    @classmethod
    def identity(cls, p: int, M: int, n: int) -> "SeriesMatrix":
        return cls._wrap(p, M, _identity(n, M), n)

    @classmethod
    def zeros(cls, p: int, M: int, m: int, n: int) -> "SeriesMatrix":
        return cls._wrap(p, M, [[[0] * M for _ in range(n)] for _ in range(m)], n)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def raw(self) -> RawMatrix:
        return _copy(self._raw)

    def __getitem__(self, ij: Tuple[int, int]) -> TruncatedSeries:
        i, j = ij
        return TruncatedSeries(self.p, self.modulus, self._raw[i][j])

    def rows(self) -> List[List[TruncatedSeries]]:
        return [[TruncatedSeries(self.p, self.modulus, e) for e in row] for row in self._raw]

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        if self.ncols != other.nrows or self.p != other.p or self.modulus != other.modulus:
            raise ValueError("incompatible matrices")
        p, M = self.p, self.modulus
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = [0] * M
                for k in range(self.ncols):
                    pr = mul_coeffs(self._raw[i][k], other._raw[k][j], M, p)
                    acc = [a + b for a, b in zip(acc, pr)]
                row.append([a % p for a in acc])
            out.append(row)
        return SeriesMatrix._wrap(p, M, out, other.ncols)

    def apply(self, vec: Sequence[TruncatedSeries]) -> List[TruncatedSeries]:
        col = SeriesMatrix(self.p, self.modulus, [[v] for v in vec])
        return [r[0] for r in (self @ col).rows()]

    def truncate(self, modulus: int) -> "SeriesMatrix":
        raw = [[(list(e) + [0] * modulus)[:modulus] for e in row] for row in self._raw]
        return SeriesMatrix._wrap(self.p, modulus, raw, self.ncols)

    def transpose(self) -> "SeriesMatrix":
        raw = [[list(self._raw[i][j]) for i in range(self.nrows)] for j in range(self.ncols)]
        return SeriesMatrix._wrap(self.p, self.modulus, raw, self.nrows)

    def valuations(self) -> List[List[int]]:
        return [[_val(e) for e in row] for row in self._raw]

    def is_diagonal_powers(self, exponents: Sequence[int]) -> bool:
        """True iff entry (i,i) is t^exponents[i] (zero when >= M) and all others vanish."""
        M = self.modulus
        for i, row in enumerate(self._raw):
            for j, e in enumerate(row):
                want = [0] * M
                if i == j and i < len(exponents) and exponents[i] < M:
                    want[exponents[i]] = 1
                if list(e) != want:
                    return False
        return True

    def det(self) -> TruncatedSeries:
        """Determinant by cofactor expansion (small matrices only)."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return TruncatedSeries(self.p, self.modulus, _det(self._raw, self.p, self.modulus))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SeriesMatrix)
            and (self.p, self.modulus, self._raw) == (other.p, other.modulus, other._raw)
        )

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e).rsplit(" mod", 1)[0] for e in row) for row in self.rows())
        return f"SeriesMatrix(F_{self.p}, t^{self.modulus}, [{body}])"


def _det(A: RawMatrix, p: int, M: int) -> Coeffs:
    n = len(A)
    if n == 0:
        return [1] + [0] * (M - 1) if M else []
    if n == 1:
        return list(A[0][0])
    total = [0] * M
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = mul_coeffs(A[0][j], _det(minor, p, M), M, p)
        sign = 1 if j % 2 == 0 else -1
        total = [(a + sign * b) % p for a, b in zip(total, term)]
    return total


@dataclass
class SmithDecomposition:
    U: SeriesMatrix
    V: SeriesMatrix
    exponents: List[int]


def _smith_raw(A: RawMatrix, p: int, M: int, ncols: int, track: bool = True):
    m, N = len(A), ncols
    A = _copy(A)
    U = _identity(m, M) if track else None
    V = _identity(N, M) if track else None
    exps: List[int] = []
    for k in range(min(m, N)):
        best = None
        for i in range(k, m):
            for j in range(k, N):
                v = _val(A[i][j])
                if v < M and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            exps.extend([M] * (min(m, N) - k))
            break
        v, i, j = best
        if i != k:
            A[k], A[i] = A[i], A[k]
            if track:
                U[k], U[i] = U[i], U[k]
        if j != k:
            for row in A:
                row[k], row[j] = row[j], row[k]
            if track:
                for row in V:
                    row[k], row[j] = row[j], row[k]
        uinv = _unit_inverse(_div_t(A[k][k], v), p)
        A[k] = [mul_coeffs(uinv, e, M, p) for e in A[k]]
        if track:
            U[k] = [mul_coeffs(uinv, e, M, p) for e in U[k]]
        for i in range(k + 1, m):
            if _val(A[i][k]) < M:
                q = _div_t(A[i][k], v)
                A[i] = [_axpy(a, q, b, p) for a, b in zip(A[i], A[k])]
                if track:
                    U[i] = [_axpy(a, q, b, p) for a, b in zip(U[i], U[k])]
        for j in range(k + 1, N):
            if _val(A[k][j]) < M:
                q = _div_t(A[k][j], v)
                for row in A:
                    row[j] = _axpy(row[j], q, row[k], p)
                if track:
                    for row in V:
                        row[j] = _axpy(row[j], q, row[k], p)
        exps.append(v)
    return exps, U, V


def smith(J: SeriesMatrix) -> SmithDecomposition:
    """Smith form U*J*V = diag(t^e_1, ..., t^e_k), k = min(m, N); exponent M means zero."""
    exps, U, V = _smith_raw(J._raw, J.p, J.modulus, J.ncols)
    return SmithDecomposition(
        SeriesMatrix._wrap(J.p, J.modulus, U, J.nrows),
        SeriesMatrix._wrap(J.p, J.modulus, V, J.ncols),
        exps,
    )


def smith_exponents_raw(A: RawMatrix, p: int, M: int, ncols: int) -> List[int]:
    return _smith_raw(A, p, M, ncols, track=False)[0]


def cokernel_exponents_raw(A: RawMatrix, p: int, M: int, ncols: int) -> List[int]:
    exps = smith_exponents_raw(A, p, M, ncols)
    return sorted(exps + [M] * (ncols - len(exps)))


def cokernel_exponents(J: SeriesMatrix) -> List[int]:
    """Invariant factors of (F[t]/t^M)^N modulo the row span of J."""
    return cokernel_exponents_raw(J._raw, J.p, J.modulus, J.ncols)


@dataclass
class TriangularForm:
    A: SeriesMatrix
    T: SeriesMatrix
    perm: List[int]  # column j of T is column perm[j] of J
    exponents: List[int]
    threshold: int
    residual: bool  # some residual-block entry is nonzero

    @property
    def b(self) -> int:
        return len(self.exponents)


def triangularize(J: SeriesMatrix, threshold: int) -> TriangularForm:
    """Row-reduce J (row ops only, columns permuted) until every remaining entry has order >= threshold."""
    p, M = J.p, J.modulus
    m, N = J.nrows, J.ncols
    T = _copy(J._raw)
    A = _identity(m, M)
    perm = list(range(N))
    exps: List[int] = []
    for k in range(min(m, N)):
        best = None
        for i in range(k, m):
            for j in range(k, N):
                v = _val(T[i][j])
                if v < M and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None or best[0] >= threshold:
            break
        v, i, j = best
        if i != k:
            T[k], T[i] = T[i], T[k]
            A[k], A[i] = A[i], A[k]
        if j != k:
            for row in T:
                row[k], row[j] = row[j], row[k]
            perm[k], perm[j] = perm[j], perm[k]
        uinv = _unit_inverse(_div_t(T[k][k], v), p)
        T[k] = [mul_coeffs(uinv, e, M, p) for e in T[k]]
        A[k] = [mul_coeffs(uinv, e, M, p) for e in A[k]]
        for i in range(k + 1, m):
            if _val(T[i][k]) < M:
                q = _div_t(T[i][k], v)
                T[i] = [_axpy(a, q, b, p) for a, b in zip(T[i], T[k])]
                A[i] = [_axpy(a, q, b, p) for a, b in zip(A[i], A[k])]
        exps.append(v)
    b = len(exps)
    residual = any(_val(T[i][j]) < M for i in range(b, m) for j in range(b, N))
    return TriangularForm(
        SeriesMatrix._wrap(p, M, A, m),
        SeriesMatrix._wrap(p, M, T, N),
        perm,
        exps,
        threshold,
        residual,
    )


class Infeasible(ArithmeticError):
    """A solvability condition failed: row ``row`` (1-based) needed order ``required``."""

    def __init__(self, row: int, required: int, actual: int, message: str = "") -> None:
        self.row, self.required, self.actual = row, required, actual
        super().__init__(message or f"row {row}: required order >= {required}, actual {actual}")


@dataclass
class AffineSolutionSet:
    p: int
    precision: int
    particular: List[TruncatedSeries]
    kernel: List[List[TruncatedSeries]]  # F_p-basis of the solution module mod t^P
    J: SeriesMatrix = field(repr=False)
    target: List[TruncatedSeries] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def members(self) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        """Every solution, as tuples of coefficient tuples mod t^P."""
        p, P = self.p, self.precision
        base = [list(z.coeffs) for z in self.particular]
        for cs in product(range(p), repeat=len(self.kernel)):
            z = [list(b) for b in base]
            for c, vec in zip(cs, self.kernel):
                if c:
                    for i, e in enumerate(vec):
                        z[i] = [(x + c * y) % p for x, y in zip(z[i], e.coeffs)]
            yield tuple(tuple(x) for x in z)

    def contains(self, z: Sequence[TruncatedSeries]) -> bool:
        P = self.precision
        lhs = self.J.truncate(P).apply([x.truncate(P) for x in z])
        return all(a == b.truncate(P) for a, b in zip(lhs, self.target))


def solve_affine(J: SeriesMatrix, c: Sequence[TruncatedSeries], precision: int) -> AffineSolutionSet:
    """All z with J z = c mod t^P, via the Smith form of J mod t^P.

    Raises Infeasible naming the first failing row of the diagonalized
    system U J V w = U c (1-based), its required order and actual order.
    """
    P = precision
    if P > J.modulus:
        raise ValueError(f"precision {P} exceeds modulus {J.modulus}")
    if len(c) != J.nrows:
        raise ValueError("right-hand side length does not match the row count")
    p, m, N = J.p, J.nrows, J.ncols
    Jp = J.truncate(P)
    exps, U, V = _smith_raw(Jp._raw, p, P, N)
    cvec = [(list(x.coeffs) + [0] * P)[:P] for x in c]
    Uc = []
    for i in range(m):
        acc = [0] * P
        for k in range(m):
            pr = mul_coeffs(U[i][k], cvec[k], P, p)
            acc = [a + b for a, b in zip(acc, pr)]
        Uc.append([a % p for a in acc])
    w0 = [[0] * P for _ in range(N)]
    wkernel: List[Tuple[int, int]] = []  # (column index, t-power) generating F-slots
    r = len(exps)
    for i in range(m):
        e = exps[i] if i < r else P
        actual = _val(Uc[i])
        if e < P:
            if actual < e:
                raise Infeasible(i + 1, e, actual)
            w0[i] = _div_t(Uc[i], e)
            # w_i is free modulo t^(P-e): slots t^(P-e), ..., t^(P-1)
            wkernel.extend((i, P - e + k) for k in range(e))
        else:
            if actual < P:
                raise Infeasible(i + 1, P, actual)
            if i < N:
                wkernel.extend((i, k) for k in range(P))
    for i in range(m, N):
        wkernel.extend((i, k) for k in range(P))

    def vcol(i: int, power: int, coeffs: Optional[Coeffs] = None) -> List[Coeffs]:
        mult = coeffs if coeffs is not None else [1 if k == power else 0 for k in range(P)]
        return [mul_coeffs(V[row][i], mult, P, p) for row in range(N)]

    z0 = [[0] * P for _ in range(N)]
    for i in range(N):
        if any(w0[i]):
            col = vcol(i, 0, w0[i])
            z0 = [[(a + b) % p for a, b in zip(x, y)] for x, y in zip(z0, col)]
    wrap = lambda vec: [TruncatedSeries(p, P, x) for x in vec]
    kernel = [wrap(vcol(i, k)) for i, k in wkernel]
    return AffineSolutionSet(p, P, wrap(z0), kernel, J, [x.truncate(P) for x in c])
