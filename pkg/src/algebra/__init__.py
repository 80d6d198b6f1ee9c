"""Exact arithmetic in real cyclotomic fields Q(2cos(π/L))."""

from src.algebra.number_field import (
    AlgebraicReal,
    NumberField,
    embed_cos,
    field_for_labels,
    is_two_cos_pi_over,
)
from src.algebra.polynomials import RationalPoly, largest_root_interval, minpoly_two_cos

__all__ = [
    "AlgebraicReal",
    "NumberField",
    "RationalPoly",
    "embed_cos",
    "field_for_labels",
    "is_two_cos_pi_over",
    "largest_root_interval",
    "minpoly_two_cos",
]
