"""
J-components, L-free vertices and flexibility of a vertex set J.

``is_flexible`` answers through components and, for an edge, rebuilds the
chordfree circuit from a shortest path inside the offending component.
``find_chordfree_circuit`` is an independent depth-first search used both as
an oracle and for the DE2 pattern.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from src.diagrams.diagram import Diagram, Vertex

Component = FrozenSet[Vertex]


def perp_fin_inf(diagram: Diagram, J: Sequence[Vertex]) -> Tuple[FrozenSet[Vertex], FrozenSet[Vertex], FrozenSet[Vertex]]:
    """(J^⊥, J^fin, J^∞); J^fin and J^∞ partition S \\ J and J^⊥ ⊆ J^fin."""
    members = set(J)
    rest = [v for v in diagram.vertices if v not in members]
    fin = frozenset(v for v in rest if all(diagram.finite(v, j) for j in members))
    inf = frozenset(v for v in rest if v not in fin)
    return diagram.perp(members), fin, inf


def j_components(diagram: Diagram, J: Sequence[Vertex]) -> List[Component]:
    """Connected components of J^∞ under finite labels, in diagram order."""
    _, _, inf = perp_fin_inf(diagram, J)
    if not inf:
        return []
    components = [frozenset(c) for c in nx.connected_components(diagram.finite_graph.subgraph(inf))]
    return sorted(components, key=lambda c: diagram.vertices.index(diagram.ordered(c)[0]))


def free_vertices(diagram: Diagram, J: Sequence[Vertex], component: Component) -> Tuple[Vertex, ...]:
    """Π(L): the elements of J with label ∞ to every vertex of L."""
    return tuple(j for j in J if all(diagram.infinite(j, x) for x in component))


@dataclass(frozen=True)
class Flexibility:
    flexible: bool
    component: Optional[Component] = None
    circuit: Tuple[Vertex, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.flexible


def is_flexible(diagram: Diagram, J: Sequence[Vertex]) -> Flexibility:
    """
    Every J-component has an L-free element of J.

    For an edge J = (r, s) that is not flexible, the witness circuit
    r, x_m, ..., x_M, s is cut out of a shortest path x_0..x_k in the component
    joining a neighbour of r to a neighbour of s, with
    M = min{i > 0 : x_i finite to s} and m = max{i < M : x_i finite to r}.
    """
    for component in j_components(diagram, J):
        if free_vertices(diagram, J, component):
            continue
        if len(J) != 2:
            return Flexibility(False, component)
        r, s = J
        return Flexibility(False, component, _witness_circuit(diagram, r, s, component))
    return Flexibility(True)


def _witness_circuit(diagram: Diagram, r: Vertex, s: Vertex, component: Component) -> Tuple[Vertex, ...]:
    graph = diagram.finite_graph.subgraph(component)
    starts = [x for x in diagram.ordered(component) if diagram.finite(x, r)]
    ends = [y for y in diagram.ordered(component) if diagram.finite(y, s)]
    best: Optional[List[Vertex]] = None
    for x in starts:
        lengths = nx.single_source_shortest_path(graph, x)
        for y in ends:
            if y in lengths and (best is None or len(lengths[y]) < len(best)):
                best = lengths[y]
    path = best
    if len(path) == 1:
        # a single vertex finite to both r and s cannot sit in J^∞
        raise ValueError(f"vertex {path[0]} is finite to both {r} and {s}")
    big_m = next(i for i in range(1, len(path)) if diagram.finite(path[i], s))
    small_m = max(i for i in range(big_m) if diagram.finite(path[i], r))
    return (r,) + tuple(path[small_m : big_m + 1]) + (s,)


def find_chordfree_circuit(diagram: Diagram, J: Sequence[Vertex]) -> Optional[Tuple[Vertex, ...]]:
    """
    Depth-first search for a chordfree circuit r, x_1, ..., x_k, s of length
    at least 4 (k >= 2) in Γ(S). Paths are pruned as soon as a chord appears;
    depth is capped by the rank.
    """
    r, s = J
    cap = len(diagram)

    def extend(path: List[Vertex]) -> Optional[Tuple[Vertex, ...]]:
        if len(path) >= cap:
            return None
        last = path[-1]
        for v in diagram.finite_graph.neighbors(last):
            if v in path or v == s:
                continue
            if any(diagram.finite(v, p) for p in path[:-1]):
                continue
            if diagram.finite(v, s):
                if len(path) >= 2:
                    return tuple(path) + (v, s)
                continue
            found = extend(path + [v])
            if found:
                return found
        return None

    return extend([r])
