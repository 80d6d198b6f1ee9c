"""Coxeter matrices, the geometric representation and exact group elements."""

from src.coxcore.enumeration import (
    dihedral_reflections,
    enumerate_group,
    enumerate_reflections,
    parabolic_dihedral_orbit,
    simple_pair_orbit,
)
from src.coxcore.matrix import INF, CoxeterMatrix, parse_label
from src.coxcore.reflections import (
    Reflection,
    ReflectionSet,
    Root,
    coxeter_matrix_of,
    reflection_from_conjugate,
    reflection_from_word,
)
from src.coxcore.system import CoxeterSystem, GroupElement, Unbounded, build_system
from src.coxcore.words import EMPTY, Word

__all__ = [
    "INF",
    "EMPTY",
    "CoxeterMatrix",
    "CoxeterSystem",
    "GroupElement",
    "Reflection",
    "ReflectionSet",
    "Root",
    "Unbounded",
    "Word",
    "build_system",
    "coxeter_matrix_of",
    "dihedral_reflections",
    "enumerate_group",
    "enumerate_reflections",
    "parabolic_dihedral_orbit",
    "parse_label",
    "reflection_from_conjugate",
    "reflection_from_word",
    "simple_pair_orbit",
]
