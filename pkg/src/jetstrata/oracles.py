"""Brute-force oracles used to cross-check the fast algorithms."""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import List, Sequence, Set, Tuple

from .dvr import SeriesMatrix, _det, _val
from .rings.series import mul_coeffs


def random_matrix(rng: random.Random, p: int, M: int, m: int, N: int, sparse: float = 0.3) -> SeriesMatrix:
    """Random matrix whose entries are t^k * (random) with k skewed upwards to get interesting exponents."""
    rows = []
    for _ in range(m):
        row = []
        for _ in range(N):
            if rng.random() < sparse:
                row.append([0] * M)
                continue
            k = rng.randrange(M + 1)
            row.append([0] * k + [rng.randrange(p) for _ in range(M - k)])
        rows.append(row)
    return SeriesMatrix(p, M, rows)


def determinantal_exponents(J: SeriesMatrix) -> List[int]:
    """d_k = min valuation over k x k minors (capped at M), k = 1..min(m, N)."""
    raw = J.raw()
    M, p = J.modulus, J.p
    out = []
    for k in range(1, min(J.nrows, J.ncols) + 1):
        best = M
        for rs in combinations(range(J.nrows), k):
            for cs in combinations(range(J.ncols), k):
                minor = [[raw[i][j] for j in cs] for i in rs]
                best = min(best, _val(_det(minor, p, M)))
        out.append(best)
    return out


def solve_bruteforce(J: SeriesMatrix, c: Sequence[Sequence[int]], P: int) -> Set[Tuple[Tuple[int, ...], ...]]:
    """All z in (F_p[t]/t^P)^N with J z = c mod t^P."""
    p, N = J.p, J.ncols
    raw = [[(list(e) + [0] * P)[:P] for e in row] for row in J.raw()]
    target = [tuple((list(x) + [0] * P)[:P]) for x in c]
    out = set()
    for flat in product(range(p), repeat=N * P):
        z = [flat[i * P:(i + 1) * P] for i in range(N)]
        ok = True
        for i, row in enumerate(raw):
            acc = [0] * P
            for e, zi in zip(row, z):
                pr = mul_coeffs(e, zi, P, p)
                acc = [a + b for a, b in zip(acc, pr)]
            if tuple(a % p for a in acc) != target[i]:
                ok = False
                break
        if ok:
            out.add(tuple(tuple(x) for x in z))
    return out
