"""Exact quiver presentations of finite-dimensional associative algebras.

The package represents algebras by structure constants over exact field
towers, computes radicals, quivers and bimodule ranks, builds truncated
pseudo / generalized path algebras over families of simple algebras, and
constructs machine-verified presentations of an algebra as a quotient of
such a path algebra by relations.
"""

from .errors import QuivalgError
from .fields import (PrimeField, RationalFunctionField, Rationals, Scalar,
                     SimpleExtension, canonical_derivation, field_from_json,
                     is_perfect_guarantee, parse_scalar)

__all__ = [
    "QuivalgError",
    "Rationals",
    "PrimeField",
    "RationalFunctionField",
    "SimpleExtension",
    "Scalar",
    "parse_scalar",
    "field_from_json",
    "is_perfect_guarantee",
    "canonical_derivation",
]

__version__ = "0.1.0"
