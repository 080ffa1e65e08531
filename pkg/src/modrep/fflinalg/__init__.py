"""Exact arithmetic and dense linear algebra over small finite fields."""

from .field import GF, FieldError, field, field_from_order, is_prime
from .matrix import (
    EchelonForm,
    FFMatrix,
    charpoly,
    charpoly_and_factor,
    fe_arith,
    kronecker,
    nullspace,
    rref,
    spin,
)

__all__ = [
    "GF",
    "FieldError",
    "field",
    "field_from_order",
    "is_prime",
    "EchelonForm",
    "FFMatrix",
    "charpoly",
    "charpoly_and_factor",
    "fe_arith",
    "kronecker",
    "nullspace",
    "rref",
    "spin",
]
