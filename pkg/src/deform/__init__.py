"""Angle-deformations: standard words, constructions, gluing and certificate checks."""

from src.deform.constructions import (
    k_mirror,
    k_special_deformation,
    rank2_special_deformation,
    sharpening_omega,
    standard_deformation,
    theta_deformation,
)
from src.deform.deformation import Deformation, EdgeImage, abstract_reflections, edge_key, inner_compose
from src.deform.merge import merge
from src.deform.tame import tame_deformation
from src.deform.verifier import CheckStatus, VerificationReport, verify_deformation
from src.deform.wild import delta_edge_deformation, wild_deformation
from src.deform.words import StandardWords

__all__ = [
    "CheckStatus",
    "Deformation",
    "EdgeImage",
    "StandardWords",
    "VerificationReport",
    "abstract_reflections",
    "delta_edge_deformation",
    "edge_key",
    "inner_compose",
    "k_mirror",
    "k_special_deformation",
    "merge",
    "rank2_special_deformation",
    "sharpening_omega",
    "standard_deformation",
    "tame_deformation",
    "theta_deformation",
    "verify_deformation",
    "wild_deformation",
]
