from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetstrata.parse import parse_polynomial
from jetstrata.rings import (
    AtLeast,
    LaurentPolynomialL,
    ModulusMismatch,
    MultiPolynomial,
    NotAUnit,
    QPoly,
    RationalFunctionS,
    TruncatedSeries,
    format_rational,
    is_prime,
    poly_eval_series,
    poly_partial,
    rank_mod_p,
    rational_arith,
    series_arith,
    series_unit_inverse,
    series_valuation,
    solve_mod_p,
)


def ts(p, M, coeffs):
    return TruncatedSeries(p, M, coeffs)


def xy(text):
    return parse_polynomial(text, ["x", "y"])


# -- prime field ----------------------------------------------------------


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_rank_and_solve_mod_p():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank_mod_p(rows, 7) == 2
    particular, kernel = solve_mod_p(rows, [1, 2, 0], 7, 3)
    assert len(kernel) == 1
    for c in range(7):
        z = [(a + c * b) % 7 for a, b in zip(particular, kernel[0])]
        assert [sum(r * x for r, x in zip(row, z)) % 7 for row in rows] == [1, 2, 0]
    assert solve_mod_p(rows, [1, 0, 0], 7, 3) is None


# -- truncated series -----------------------------------------------------


def test_series_arith_examples():
    one_plus = ts(7, 3, [1, 1])
    one_minus = ts(7, 3, [1, -1])
    assert series_arith(one_plus, one_minus, "mul") == ts(7, 3, [1, 0, -1])
    a = ts(5, 4, [1, 2, 3])
    assert series_arith(a, TruncatedSeries.zero(5, 4), "add") == a
    t2 = ts(5, 3, [0, 0, 1])
    assert series_arith(t2, t2, "mul").is_zero()


def test_series_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        ts(5, 3, [1]) + ts(5, 4, [1])
    with pytest.raises(ModulusMismatch):
        ts(5, 3, [1]) * ts(7, 3, [1])


def test_series_valuation_examples():
    v = series_valuation(TruncatedSeries.zero(5, 4))
    assert isinstance(v, AtLeast) and str(v) == ">=4"
    assert series_valuation(ts(5, 5, [0, 0, 1, 1])) == 2
    assert series_valuation(ts(5, 5, [3, 1])) == 0


def test_series_unit_inverse_examples():
    assert series_unit_inverse(TruncatedSeries.one(5, 3)) == TruncatedSeries.one(5, 3)
    assert series_unit_inverse(ts(7, 3, [1, -1])) == ts(7, 3, [1, 1, 1])
    assert series_unit_inverse(ts(5, 2, [2])) == ts(5, 2, [3])
    with pytest.raises(NotAUnit):
        series_unit_inverse(ts(5, 3, [0, 1]))


coeff_lists = st.lists(st.integers(0, 4), min_size=0, max_size=6)


@given(coeff_lists, coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_series_ring_laws(a, b, c):
    A, B, C = ts(5, 6, a), ts(5, 6, b), ts(5, 6, c)
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A
    assert A - A == TruncatedSeries.zero(5, 6)


@given(st.integers(1, 4), coeff_lists)
@settings(max_examples=40, deadline=None)
def test_unit_inverse_property(u, rest):
    a = ts(5, 6, [u] + rest)
    assert a * a.unit_inverse() == TruncatedSeries.one(5, 6)


def test_shift_and_div_t():
    a = ts(3, 5, [1, 2])
    assert a.shift(2) == ts(3, 5, [0, 0, 1, 2])
    assert a.shift(2).div_t(2) == ts(3, 5, [1, 2])


# -- polynomials ----------------------------------------------------------


def test_poly_eval_series_examples():
    M = 7
    t2 = ts(5, M, [0, 0, 1])
    t3 = ts(5, M, [0, 0, 0, 1])
    assert poly_eval_series(xy("y^2 - x^3"), [t2, t3]).is_zero()
    c = ts(5, M, [3, 1, 4])
    assert poly_eval_series(parse_polynomial("x", ["x"]), [c]) == c
    got = poly_eval_series(xy("x*y"), [ts(5, 3, [1, 1]), ts(5, 3, [1, -1])])
    assert got == ts(5, 3, [1, 0, -1])


def test_poly_partial_examples():
    assert poly_partial(xy("y^2 - x^3"), 1) == xy("-3*x^2")
    assert poly_partial(MultiPolynomial.constant(2, 7), 1).is_zero()
    assert poly_partial(xy("x*y"), 2) == xy("x")
    with pytest.raises(IndexError):
        poly_partial(xy("x"), 3)


def test_poly_eval_mod_matches_series_constant_term():
    f = xy("3*x^2*y - y^3 + 2")
    for x, y in product(range(5), repeat=2):
        val = f.eval_mod([x, y], 5)
        assert val == f.eval_series([ts(5, 1, [x]), ts(5, 1, [y])]).coeffs[0]


def test_poly_to_string_roundtrip():
    f = xy("y^2 - x^3 + 2*x*y - 1")
    assert xy(f.to_string(["x", "y"])) == f


# -- Laurent polynomials in L ---------------------------------------------


def test_laurent_arithmetic():
    L = LaurentPolynomialL.L()
    f = (L - 1) ** 2
    assert f == L * L - L * 2 + 1
    assert str(L ** 3 - L * 2 + 1) == "L^3 - 2*L + 1"
    assert f.at_one() == 0
    assert L ** -1 * L == LaurentPolynomialL.const(1)
    assert (-L) ** -3 == -(L ** -3)
    with pytest.raises(ValueError):
        (L + 1) ** -1
    assert (L ** 2 + 1).evaluate(3) == 10


# -- rational functions in s ----------------------------------------------


def test_rational_arith_examples():
    a = RationalFunctionS.linear_inverse(1, 1)  # 1/(1+s)
    zero = RationalFunctionS.const(0)
    assert rational_arith(a, zero, "add") == a
    b = RationalFunctionS.linear_inverse(2, 1)
    assert format_rational(rational_arith(b, b, "mul")) == "1/(2+s)^2"
    assert format_rational(rational_arith(a, a, "add")) == "2/(1+s)"


def test_rational_canonical_form():
    # (8+2s)/((4+2s)(2+s)) reduces to (4+s)/(2+s)^2
    z = RationalFunctionS(QPoly([8, 2]), QPoly([4, 2]) * QPoly([2, 1]))
    assert format_rational(z) == "(4+s)/(2+s)^2"
    assert z(0) == 1
    assert z(Fraction(1, 2)) == Fraction(18, 25)
    with pytest.raises(ZeroDivisionError):
        z(-2)


def test_format_rational_shapes():
    assert format_rational(RationalFunctionS(QPoly([10, 3]), QPoly([5, 2]) * QPoly([2, 1]))) == "(10+3s)/((5+2s)(2+s))"
    assert format_rational(RationalFunctionS(QPoly([1]), QPoly([0, 1]))) == "1/s"
    assert format_rational(RationalFunctionS(QPoly([1]), QPoly([2]) * QPoly([1, 1]) ** 2)) == "1/(2(1+s)^2)"


@given(st.integers(-5, 5), st.integers(1, 4), st.integers(-5, 5), st.integers(1, 4))
@settings(max_examples=50, deadline=None)
def test_rational_field_laws(a, b, c, d):
    x = RationalFunctionS.linear_inverse(a, b)
    y = RationalFunctionS.linear_inverse(c, d)
    assert x + y == y + x
    assert (x * y) / y == x
    assert (x - y) + y == x
