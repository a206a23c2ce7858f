import random

import pytest

from jetstrata.dvr import (
    Infeasible,
    SeriesMatrix,
    cokernel_exponents,
    smith,
    solve_affine,
    triangularize,
)
from jetstrata.oracles import determinantal_exponents, random_matrix, solve_bruteforce
from jetstrata.rings import TruncatedSeries


def mono(k, M):
    out = [0] * M
    if k < M:
        out[k] = 1
    return out


def tpow(p, M, k):
    return TruncatedSeries(p, M, mono(k, M))


def test_smith_examples():
    assert smith(SeriesMatrix.identity(5, 4, 2)).exponents == [0, 0]
    assert smith(SeriesMatrix.zeros(5, 4, 2, 3)).exponents == [4, 4]
    J = SeriesMatrix(5, 5, [[mono(1, 5), mono(2, 5)], [mono(2, 5), mono(3, 5)]])
    sd = smith(J)
    assert sd.exponents == [1, 5]
    assert (sd.U @ J @ sd.V).is_diagonal_powers(sd.exponents)


def test_cokernel_examples():
    assert cokernel_exponents(SeriesMatrix(5, 4, [[mono(1, 4)]])) == [1]
    assert cokernel_exponents(SeriesMatrix(5, 8, [[mono(3, 8), mono(4, 8)]])) == [3, 8]
    assert cokernel_exponents(SeriesMatrix.identity(5, 6, 2)) == [0, 0]


def test_triangularize_examples():
    J = SeriesMatrix(5, 6, [[mono(0, 6), mono(1, 6)], [[0] * 6, mono(2, 6)]])
    tf = triangularize(J, 3)
    assert tf.b == 2 and tf.exponents == [0, 2]
    T = tf.A @ J
    assert [[T.raw()[i][tf.perm[j]] for j in range(2)] for i in range(2)] == tf.T.raw()
    tf = triangularize(SeriesMatrix(5, 6, [[mono(5, 6), [0] * 5 + [1]]]), 3)
    assert tf.b == 0 and tf.residual
    tf = triangularize(SeriesMatrix.identity(3, 4, 3), 1)
    assert tf.b == 3 and tf.exponents == [0, 0, 0]


def test_solve_affine_examples():
    J = SeriesMatrix(5, 3, [[mono(1, 3)]])
    sol = solve_affine(J, [tpow(5, 3, 2)], 3)
    assert sol.particular == [tpow(5, 3, 1)]
    assert sol.dimension == 1
    assert [v[0] for v in sol.kernel] == [tpow(5, 3, 2)]
    with pytest.raises(Infeasible) as info:
        solve_affine(SeriesMatrix(5, 3, [[mono(2, 3)]]), [tpow(5, 3, 1)], 3)
    assert (info.value.row, info.value.required, info.value.actual) == (1, 2, 1)
    c = [TruncatedSeries(5, 4, [1, 2, 3]), TruncatedSeries(5, 4, [0, 4])]
    sol = solve_affine(SeriesMatrix.identity(5, 4, 2), c, 4)
    assert sol.particular == c and sol.dimension == 0


def test_smith_matches_determinantal_minors():
    rng = random.Random(7)
    for _ in range(150):
        p = rng.choice([2, 3])
        M = rng.randint(1, 4)
        J = random_matrix(rng, p, M, rng.randint(1, 3), rng.randint(1, 4))
        exps = smith(J).exponents
        partial = [min(sum(exps[: k + 1]), M) for k in range(len(exps))]
        assert partial == determinantal_exponents(J)


def test_smith_transforms_are_invertible():
    rng = random.Random(8)
    for _ in range(60):
        J = random_matrix(rng, 3, 4, 3, 3)
        sd = smith(J)
        assert sd.U.det().is_unit() and sd.V.det().is_unit()
        assert (sd.U @ J @ sd.V).is_diagonal_powers(sd.exponents)


def test_solve_affine_matches_brute_force():
    rng = random.Random(9)
    for _ in range(80):
        p = rng.choice([2, 3])
        P = rng.randint(1, 3)
        m, N = rng.randint(1, 3), rng.randint(1, 3)
        if p ** (N * P) > 800:
            continue
        J = random_matrix(rng, p, P, m, N)
        c = [TruncatedSeries(p, P, [rng.randrange(p) for _ in range(P)]) for _ in range(m)]
        want = solve_bruteforce(J, [x.coeffs for x in c], P)
        try:
            got = set(solve_affine(J, c, P).members())
        except Infeasible:
            got = set()
        assert got == want


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        SeriesMatrix.identity(3, 4, 2) @ SeriesMatrix.identity(3, 4, 3)
