"""Exponential-polynomial solutions of coupled Fermat-type partial
differential-difference systems: exact algebra, verification and theorem
constructors."""

from .algebra import ExpPoly, Polynomial, equal, is_identically_zero
from .analysis import order_of_growth
from .parser import format_exppoly, parse_constant, parse_exppoly
from .systems import E1Params, E4Params, FGParams, OperatorSpec, Verdict, VerificationReport, verify
from .theorems import TheoremParams, construct_solution, gate_nonexistence, validate_constraints

__version__ = "0.1.0"

__all__ = [
    "E1Params",
    "E4Params",
    "ExpPoly",
    "FGParams",
    "OperatorSpec",
    "Polynomial",
    "TheoremParams",
    "Verdict",
    "VerificationReport",
    "construct_solution",
    "equal",
    "format_exppoly",
    "gate_nonexistence",
    "is_identically_zero",
    "order_of_growth",
    "parse_constant",
    "parse_exppoly",
    "validate_constraints",
    "verify",
]
