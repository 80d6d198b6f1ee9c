"""
Θ-edge and Δ-edge classification of an edge J = {r, s} of Γ(S).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.coxcore.matrix import INF
from src.diagrams.diagram import Diagram, Vertex
from src.diagrams.flexibility import find_chordfree_circuit, is_flexible, perp_fin_inf
from src.diagrams.templates import find_pattern
from src.utils.logging import logger


def is_theta_edge(diagram: Diagram, J: Sequence[Vertex]) -> bool:
    """
    J is flexible and no t outside J has finite labels to both r and s with
    at least one of them >= 3. Such a t is exactly what any irreducible
    2-spherical proper superset of J must contain, and {r, s, t} is one.
    """
    r, s = J
    if diagram.label(r, s) == INF or diagram.label(r, s) < 3:
        return False
    if not is_flexible(diagram, J):
        return False
    for t in diagram.vertices:
        if t in (r, s):
            continue
        a, b = diagram.label(t, r), diagram.label(t, s)
        if a != INF and b != INF and max(a, b) >= 3:
            return False
    return True


@dataclass(frozen=True)
class Violation:
    pattern: str
    vertices: Tuple[Vertex, ...]
    roles: Dict[str, Vertex] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"pattern": self.pattern, "vertices": list(self.vertices)}
        if self.roles:
            out["roles"] = dict(self.roles)
        return out


@dataclass(frozen=True)
class DeltaReport:
    edge: Tuple[Vertex, Vertex]
    violations: Tuple[Violation, ...] = ()

    @property
    def is_delta(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.is_delta

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edge": list(self.edge),
            "is_delta": self.is_delta,
            "violations": [v.to_dict() for v in self.violations],
        }


def find_de1(diagram: Diagram, J: Sequence[Vertex]) -> Optional[Tuple[Vertex, ...]]:
    """
    Non-spherical, 2-spherical, irreducible K ⊇ J. Such a K is J plus a clique
    of common finite neighbours of J, so cliques are enumerated by size and
    the first irreducible non-spherical one wins.
    """
    r, s = J
    _, fin, _ = perp_fin_inf(diagram, J)
    if not fin:
        return None
    for clique in nx.enumerate_all_cliques(diagram.finite_graph.subgraph(fin)):
        candidate = (r, s) + tuple(diagram.ordered(clique))
        if diagram.is_irreducible(candidate) and not diagram.is_spherical(candidate):
            return candidate
    return None


def is_delta_edge(diagram: Diagram, J: Sequence[Vertex], exhaustive: bool = False) -> DeltaReport:
    """
    Check the four obstruction patterns. The search stops at the first hit
    unless ``exhaustive`` is set, in which case one witness per pattern is
    reported.
    """
    r, s = J
    found: List[Violation] = []

    de1 = find_de1(diagram, J)
    if de1:
        found.append(Violation("DE1", de1))
    if found and not exhaustive:
        return DeltaReport((r, s), tuple(found))

    circuit = find_chordfree_circuit(diagram, J)
    if circuit:
        found.append(Violation("DE2", circuit))
    if found and not exhaustive:
        return DeltaReport((r, s), tuple(found))

    if diagram.label(r, s) == 5:
        for name in ("DE3", "DE4"):
            match = find_pattern(diagram, name, J)
            if match:
                found.append(Violation(name, match.vertices, match.roles))
                if not exhaustive:
                    break

    if found:
        logger.debug("Edge is not a delta-edge", edge=[r, s], patterns=[v.pattern for v in found])
    return DeltaReport((r, s), tuple(found))
