"""Finite affine groups ax+b, the (q-1)-dimensional irreducible representation,
and numerical checks that the algebra of multiplication operators is the
unique maximal inductive algebra for it."""

from .errors import (
    ContextMismatch,
    CounterexampleFound,
    DivisionByZero,
    LengthMismatch,
    NonPrime,
    NotAbelian,
    UnsupportedSize,
    ZeroScale,
)
from .field import FieldContext, FieldElement, build_field, field_of_order
from .group import AffineGroup, GroupElement, compose, dilation, inverse, translation
from .pi_rep import PiRepresentation
from .verifier import CheckRecord, VerificationReport, full_report

__all__ = [
    "AffineGroup",
    "CheckRecord",
    "ContextMismatch",
    "CounterexampleFound",
    "DivisionByZero",
    "FieldContext",
    "FieldElement",
    "GroupElement",
    "LengthMismatch",
    "NonPrime",
    "NotAbelian",
    "PiRepresentation",
    "UnsupportedSize",
    "VerificationReport",
    "ZeroScale",
    "build_field",
    "compose",
    "dilation",
    "field_of_order",
    "full_report",
    "inverse",
    "translation",
]
