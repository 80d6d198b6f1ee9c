"""Pairings, sharp-angle tests and root subbases."""

from src.roots.angles import (
    AngleClass,
    SharpnessVerdict,
    SubbaseCertificate,
    angle_class,
    is_fundamental_by_subbase,
    is_root_subbase,
    is_sharp_angled_pair,
    is_sharp_angled_set,
    pairing,
    template_subbase,
)

__all__ = [
    "AngleClass",
    "SharpnessVerdict",
    "SubbaseCertificate",
    "angle_class",
    "is_fundamental_by_subbase",
    "is_root_subbase",
    "is_sharp_angled_pair",
    "is_sharp_angled_set",
    "pairing",
    "template_subbase",
]
