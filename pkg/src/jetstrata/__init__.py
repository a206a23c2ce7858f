"""Exact computations on jet schemes over finite fields, their Jacobian strata, and zeta functions."""

from .dvr import Infeasible, SeriesMatrix, cokernel_exponents, smith, solve_affine, triangularize
from .jets import (
    AffineScheme,
    BudgetExceeded,
    Jet,
    contact_count,
    count_jets,
    enumerate_jets,
    extend_jet,
    verify_jet,
)
from .lifting import LiftRequest, lift_backtracking, lift_dvr, liftability_frontier, membership_transfer_check
from .parse import ParseError, load_scheme, load_scheme_text, parse_polynomial
from .strata import HypothesisViolated, divisibility_report, fiber_report, jet_invariants, stratify

__version__ = "0.1.0"
