"""Prime fields F_p and dense linear algebra over them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field Z/pZ. Elements are plain ints in 0..p-1."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def __str__(self) -> str:
        return f"F_{self.p}"


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(_rref(rows, p)[1])


def _rref(rows: Sequence[Sequence[int]], p: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [[x % p for x in row] for row in rows]
    ncols = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def solve_mod_p(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int], p: int, ncols: Optional[int] = None
) -> Optional[Tuple[List[int], List[List[int]]]]:
    """Solve ``matrix @ z = rhs`` over F_p.

    Returns ``(particular, kernel_basis)`` or None when inconsistent. The
    particular solution has all free variables set to zero, and the kernel
    basis has one vector per free variable (in increasing column order).
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = _rref(aug, p) if aug else ([], [])
    if ncols in pivots:
        return None
    particular = [0] * ncols
    for i, c in enumerate(pivots):
        particular[c] = red[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, c in enumerate(pivots):
            v[c] = -red[i][fc] % p
        kernel.append(v)
    return particular, kernel


def span_points(
    base: Sequence[int], basis: Sequence[Sequence[int]], p: int
) -> Iterator[Tuple[int, ...]]:
    """All points of ``base + span(basis)`` (unsorted, each exactly once)."""
    n = len(base)
    if not basis:
        yield tuple(x % p for x in base)
        return
    coeffs = [0] * len(basis)
    while True:
        v = list(base)
        for c, b in zip(coeffs, basis):
            if c:
                for i in range(n):
                    v[i] += c * b[i]
        yield tuple(x % p for x in v)
        k = 0
        while k < len(coeffs):
            coeffs[k] += 1
            if coeffs[k] < p:
                break
            coeffs[k] = 0
            k += 1
        else:
            return
