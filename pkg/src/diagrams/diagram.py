"""
Labelled diagrams Γ(S).

A Diagram is a thin view over a CoxeterMatrix. Pairs with a finite label are
the edges of Γ(S); pairs with label >= 3 are the edges of the Coxeter diagram.
Both are exposed as networkx graphs so component and path questions go through
networkx.
"""

from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from src.algebra.number_field import AlgebraicReal, field_for_labels
from src.coxcore.matrix import INF, CoxeterMatrix, Label
from src.utils.logging import logger

Vertex = str


class Diagram:
    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self.vertices: Tuple[Vertex, ...] = matrix.generators
        self._position = {v: i for i, v in enumerate(self.vertices)}
        self._spherical_cache: Dict[FrozenSet[Vertex], bool] = {}

    @classmethod
    def from_labels(
        cls, vertices: Sequence[Vertex], labels: Mapping[Tuple[Vertex, Vertex], Label], default: Label = 2
    ) -> "Diagram":
        """Build from a sparse label map; unlisted pairs get ``default``."""
        rows = [[1 if i == j else default for j in range(len(vertices))] for i in range(len(vertices))]
        index = {v: i for i, v in enumerate(vertices)}
        for (a, b), m in labels.items():
            rows[index[a]][index[b]] = rows[index[b]][index[a]] = m
        return cls(CoxeterMatrix.from_rows(vertices, rows))

    def __repr__(self) -> str:
        return f"Diagram({list(self.vertices)})"

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: Vertex) -> bool:
        return vertex in self._position

    def label(self, a: Vertex, b: Vertex) -> Label:
        return self.matrix.entries[self._position[a]][self._position[b]]

    def finite(self, a: Vertex, b: Vertex) -> bool:
        return a != b and self.label(a, b) != INF

    def infinite(self, a: Vertex, b: Vertex) -> bool:
        return self.label(a, b) == INF

    def ordered(self, vertices: Iterable[Vertex]) -> Tuple[Vertex, ...]:
        """Vertices in diagram order, for deterministic iteration over sets."""
        return tuple(sorted(set(vertices), key=self._position.__getitem__))

    def edges(self, within: Optional[Iterable[Vertex]] = None) -> List[Tuple[Vertex, Vertex]]:
        """Γ-edges (finite label) inside ``within``, in diagram order."""
        pool = self.ordered(self.vertices if within is None else within)
        return [(a, b) for a, b in combinations(pool, 2) if self.finite(a, b)]

    @cached_property
    def finite_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from((a, b, {"label": self.label(a, b)}) for a, b in self.edges())
        return graph

    @cached_property
    def coxeter_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(
            (a, b, {"label": self.label(a, b)})
            for a, b in combinations(self.vertices, 2)
            if self.label(a, b) >= 3
        )
        return graph

    def restrict(self, subset: Iterable[Vertex]) -> "Diagram":
        keep = self.ordered(subset)
        rows = [[self.label(a, b) if a != b else 1 for b in keep] for a in keep]
        return Diagram(CoxeterMatrix(keep, tuple(tuple(row) for row in rows)))

    def perp(self, subset: Iterable[Vertex]) -> FrozenSet[Vertex]:
        """K^⊥: vertices outside K with label 2 to every element of K."""
        subset = set(subset)
        return frozenset(
            v for v in self.vertices if v not in subset and all(self.label(v, k) == 2 for k in subset)
        )

    # --- type tests -----------------------------------------------------------

    def is_two_spherical(self, subset: Iterable[Vertex]) -> bool:
        return all(self.finite(a, b) for a, b in combinations(set(subset), 2))

    def is_irreducible(self, subset: Iterable[Vertex]) -> bool:
        subset = list(subset)
        if not subset:
            return False
        return nx.is_connected(self.coxeter_graph.subgraph(subset))

    def is_spherical(self, subset: Iterable[Vertex]) -> bool:
        """
        Exact positive-definiteness of the Gram matrix of K via LDLᵀ pivots,
        computed in the field of K's own labels.
        """
        key = frozenset(subset)
        if key not in self._spherical_cache:
            self._spherical_cache[key] = self._gram_positive_definite(self.ordered(key))
        return self._spherical_cache[key]

    def _gram_positive_definite(self, subset: Tuple[Vertex, ...]) -> bool:
        if not self.is_two_spherical(subset):
            return False
        if len(subset) <= 1:
            return True
        labels = [self.label(a, b) for a, b in combinations(subset, 2)]
        field = field_for_labels(labels)
        gram: List[List[AlgebraicReal]] = [
            [field.one() if a == b else -field.element(field.two_cos(self.label(a, b))) / 2 for b in subset]
            for a in subset
        ]
        n = len(subset)
        for k in range(n):
            pivot = gram[k][k]
            if pivot.sign() <= 0:
                logger.debug("Gram pivot not positive", subset=list(subset), step=k)
                return False
            for i in range(k + 1, n):
                if gram[i][k].is_zero():
                    continue
                factor = gram[i][k] / pivot
                for j in range(k + 1, n):
                    gram[i][j] = gram[i][j] - factor * gram[k][j]
        return True

    def path_labels(self, subset: Iterable[Vertex]) -> Optional[Tuple[Tuple[Vertex, ...], Tuple[Label, ...]]]:
        """
        If the Coxeter diagram on ``subset`` is a simple path, return its vertex
        order (starting from the end with the larger label) and its edge labels.
        """
        subset = list(subset)
        graph = self.coxeter_graph.subgraph(subset)
        if len(subset) == 1:
            return (tuple(subset), ())
        if not nx.is_connected(graph) or graph.number_of_edges() != len(subset) - 1:
            return None
        ends = [v for v in subset if graph.degree(v) == 1]
        if len(ends) != 2 or any(graph.degree(v) > 2 for v in subset):
            return None
        walks = []
        for end in ends:
            order = [end]
            while len(order) < len(subset):
                order.append(next(n for n in graph.neighbors(order[-1]) if n not in order))
            walks.append((tuple(order), tuple(self.label(a, b) for a, b in zip(order, order[1:]))))
        return max(walks, key=lambda walk: walk[1])

    def type_of(self, subset: Iterable[Vertex]) -> Optional[str]:
        """"H3" or "H4" for the matching rank-3/4 subsets, otherwise None."""
        subset = list(subset)
        if len(subset) not in (3, 4) or not self.is_two_spherical(subset):
            return None
        shape = self.path_labels(subset)
        if shape is None:
            return None
        _, labels = shape
        if labels == (5, 3):
            return "H3"
        if labels == (5, 3, 3):
            return "H4"
        return None

    def has_h3_subset(self, edge: Optional[Sequence[Vertex]] = None) -> bool:
        """Whether some 3-subset (containing ``edge`` when given) has type H₃."""
        if edge is not None:
            r, s = edge
            return any(self.type_of((r, s, t)) == "H3" for t in self.vertices if t not in (r, s))
        return any(self.type_of(triple) == "H3" for triple in combinations(self.vertices, 3))


def diagram_of(matrix: CoxeterMatrix) -> Diagram:
    return Diagram(matrix)
