"""Exact differential and second-order zero differential spectra over GF(p^n)."""

from .field import (
    Field,
    FieldElement,
    FieldError,
    arith,
    make_field,
    omega,
    quadratic_character,
    solve_quadratic,
    special_elements,
    trace,
)
from .functions import (
    FunctionError,
    FunctionUnderTest,
    GammaTraceInverse,
    InversePlusTrace,
    Monomial,
    TableFunction,
    canonical_exponent,
    gapn_derivative,
    parse_function,
    second_order_diff,
)
from .closed_forms import (
    THEOREMS,
    HypothesisError,
    TheoremVerdict,
    kloosterman,
    predict,
    s6_count_formula,
    vanishing_count_formula,
    verify,
)

__version__ = "1.0.0"

__all__ = [
    "Field", "FieldElement", "FieldError", "arith", "make_field", "omega",
    "quadratic_character", "solve_quadratic", "special_elements", "trace",
    "FunctionError", "FunctionUnderTest", "GammaTraceInverse", "InversePlusTrace",
    "Monomial", "TableFunction", "canonical_exponent", "gapn_derivative",
    "parse_function", "second_order_diff",
    "THEOREMS", "HypothesisError", "TheoremVerdict", "kloosterman", "predict",
    "s6_count_formula", "vanishing_count_formula", "verify",
]
