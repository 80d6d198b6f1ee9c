"""Combinatorics on Γ(S): flexibility, Θ/Δ classification and the H₃/H₄ structure sets."""

from src.diagrams.classification import DeltaReport, Violation, find_de1, is_delta_edge, is_theta_edge
from src.diagrams.context import EdgeContext, WildSets, degree, edge_context, is_tame
from src.diagrams.diagram import Diagram, diagram_of
from src.diagrams.flexibility import (
    Flexibility,
    find_chordfree_circuit,
    free_vertices,
    is_flexible,
    j_components,
    perp_fin_inf,
)
from src.diagrams.templates import TemplateMatch, find_pattern, load_templates, match_template

__all__ = [
    "DeltaReport",
    "Diagram",
    "EdgeContext",
    "Flexibility",
    "TemplateMatch",
    "Violation",
    "WildSets",
    "degree",
    "diagram_of",
    "edge_context",
    "find_chordfree_circuit",
    "find_de1",
    "find_pattern",
    "free_vertices",
    "is_delta_edge",
    "is_flexible",
    "is_tame",
    "is_theta_edge",
    "j_components",
    "load_templates",
    "match_template",
    "perp_fin_inf",
]
