from .field import PrimeField, is_prime, rank_mod_p, solve_mod_p
from .laurent import LaurentPolynomialL
from .poly import MultiPolynomial, poly_eval_series, poly_partial
from .ratfunc import QPoly, RationalFunctionS, format_rational, rational_arith
from .series import (
    AtLeast,
    ModulusMismatch,
    NotAUnit,
    TruncatedSeries,
    series_arith,
    series_unit_inverse,
    series_valuation,
    valuation_value,
)

__all__ = [
    "AtLeast", "LaurentPolynomialL", "ModulusMismatch", "MultiPolynomial", "NotAUnit",
    "PrimeField", "QPoly", "RationalFunctionS", "TruncatedSeries", "format_rational",
    "is_prime", "poly_eval_series", "poly_partial", "rank_mod_p", "rational_arith",
    "series_arith", "series_unit_inverse", "series_valuation", "solve_mod_p",
    "valuation_value",
]
