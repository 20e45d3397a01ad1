"""Iwasawa invariants of Z_p-extensions from class-group growth data."""

from .ambiguous import ChevalleyInput, ambiguous_count, strong_ambiguous_count
from .class_data import (
    AbelianGroupStructure,
    ExampleRecord,
    classify_ramification_p2,
    classify_ramification_p3,
    load_fixtures,
    load_shipped_fixtures,
    p_exponent,
)
from .deduction import DeductionResult, deduce, deduce_sequence, mu_upper, predict_e, residuals
from .elementary import INFINITE, ElementaryModule, quotient_order_nu
from .errors import (
    DomainError,
    InconsistentInput,
    IwasawaError,
    NotAUnit,
    ParseError,
    PrecisionExhausted,
    StructuralError,
    ValidationError,
)
from .lambda_ring import LambdaPoly, ideal_index, nu, omega, weierstrass_divide
from .padic import PadicScalar

__version__ = "0.1.0"
