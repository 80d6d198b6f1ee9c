"""
Structure sets around a Δ-edge J = {r, s} with o(rs) = 5.

T collects the vertices t with {r, s, t} of type H₃ (split into T_r and T_s by
which element of J carries the 3), U_t the vertices completing {r, s, t} to
H₄. Tameness, degree and the V/W/X/Y/Z sets of a wild vertex are built on top.
``None`` stands for the symbol ∞ wherever a vertex or ∞ is expected
(t(L), u(L), the extra index of Û_t).
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from src.diagrams.diagram import Diagram, Vertex
from src.diagrams.flexibility import Component, is_flexible, j_components, perp_fin_inf
from src.diagrams.templates import find_pattern
from src.utils.errors import InternalInvariantBroken, NotDeltaEdge
from src.utils.logging import logger


def h3_vertices(diagram: Diagram, J: Sequence[Vertex]) -> Tuple[Vertex, ...]:
    r, s = J
    return tuple(t for t in diagram.vertices if t not in (r, s) and diagram.type_of((r, s, t)) == "H3")


def h4_completions(diagram: Diagram, J: Sequence[Vertex], t: Vertex) -> Tuple[Vertex, ...]:
    r, s = J
    return tuple(
        u for u in diagram.vertices if u not in (r, s, t) and diagram.type_of((r, s, t, u)) == "H4"
    )


def is_tame(diagram: Diagram, J: Sequence[Vertex], t: Vertex, K: Optional[Sequence[Vertex]] = None) -> bool:
    """t is tame in K when no subset of K containing J ∪ {t} carries the tameness pattern."""
    scope = diagram if K is None else diagram.restrict(K)
    return find_pattern(scope, "TAME", J, bound={"t": t}) is None


def degree(diagram: Diagram, J: Sequence[Vertex], K: Optional[Sequence[Vertex]] = None) -> int:
    """Number of t ∈ K ∩ T that are wild in K."""
    scope = diagram if K is None else diagram.restrict(K)
    return sum(1 for t in h3_vertices(scope, J) if not is_tame(scope, J, t))


@dataclass(frozen=True)
class WildSets:
    u: Optional[Vertex]
    V: FrozenSet[Vertex]
    W: FrozenSet[Vertex]
    X: FrozenSet[Vertex]
    Y: FrozenSet[Vertex]
    Z: FrozenSet[Vertex]


class EdgeContext:
    def __init__(self, diagram: Diagram, J: Sequence[Vertex]):
        r, s = J
        if diagram.label(r, s) != 5:
            raise NotDeltaEdge(f"edge {r}{s} has label {diagram.label(r, s)}, expected 5", {"edge": [r, s]})
        self.diagram = diagram
        self.J: Tuple[Vertex, Vertex] = (r, s)
        self.r, self.s = r, s
        self.Jperp, self.Jfin, self.Jinf = perp_fin_inf(diagram, self.J)
        self.components: List[Component] = j_components(diagram, self.J)

        self.T = h3_vertices(diagram, self.J)
        self.T_s = tuple(t for t in self.T if diagram.label(s, t) == 3)
        self.T_r = tuple(t for t in self.T if diagram.label(r, t) == 3)
        self.U_t: Dict[Vertex, Tuple[Vertex, ...]] = {t: h4_completions(diagram, self.J, t) for t in self.T}
        self.U = diagram.ordered(u for us in self.U_t.values() for u in us)
        self.T3 = tuple(t for t in self.T if not self.U_t[t])
        self.T4 = tuple(t for t in self.T if self.U_t[t])

        self.T_L: Dict[Component, Tuple[Vertex, ...]] = {
            L: tuple(t for t in self.T if any(diagram.finite(t, x) for x in L)) for L in self.components
        }
        for L, ts in self.T_L.items():
            if len(ts) > 1:
                raise InternalInvariantBroken(
                    f"J-component {sorted(L)} meets several H3 vertices {list(ts)}",
                    {"component": diagram.ordered(L), "T_L": list(ts)},
                )
        for t in self.T:
            for L in self.jt_components(t):
                if len(self.U_L(t, L)) > 1:
                    raise InternalInvariantBroken(
                        f"J_t-component {sorted(L)} meets several H4 vertices for t={t}",
                        {"t": t, "component": diagram.ordered(L)},
                    )
        logger.debug(
            "Edge context built",
            edge=list(self.J),
            T=list(self.T),
            U=list(self.U),
            components=len(self.components),
        )

    # --- per-vertex data ------------------------------------------------------

    @cached_property
    def tame(self) -> Dict[Vertex, bool]:
        return {t: is_tame(self.diagram, self.J, t) for t in self.T}

    @property
    def degree(self) -> int:
        return sum(1 for t in self.T if not self.tame[t])

    @property
    def wild(self) -> Tuple[Vertex, ...]:
        return tuple(t for t in self.T if not self.tame[t])

    def side(self, t: Vertex) -> str:
        """"s" for t ∈ T_s, "r" for t ∈ T_r."""
        return "s" if t in self.T_s else "r"

    def neighbour3(self, t: Vertex) -> Vertex:
        """The element of J with label 3 to t."""
        return self.s if t in self.T_s else self.r

    def far(self, t: Vertex) -> Vertex:
        """The element of J commuting with t."""
        return self.r if t in self.T_s else self.s

    def u_of_t(self, t: Vertex) -> Optional[Vertex]:
        """u_t for a tame t ∈ T⁴, None for t ∈ T³."""
        us = self.U_t[t]
        if len(us) > 1:
            raise InternalInvariantBroken(f"{t} has {len(us)} H4 completions but is used as tame", {"t": t})
        return us[0] if us else None

    def t_of(self, L: Component) -> Optional[Vertex]:
        ts = self.T_L[L]
        return ts[0] if ts else None

    def free(self, L: Component) -> Tuple[Vertex, ...]:
        """Π(L)."""
        return tuple(j for j in self.J if all(self.diagram.infinite(j, x) for x in L))

    def K_t(self, t: Optional[Vertex]) -> FrozenSet[Vertex]:
        if t is None:
            return frozenset(self.J)
        u = self.u_of_t(t)
        return frozenset(self.J + (t,) + ((u,) if u else ()))

    def K_def(self, t: Optional[Vertex]) -> FrozenSet[Vertex]:
        K = self.K_t(t)
        return K | self.diagram.perp(K)

    @property
    def hat_J(self) -> FrozenSet[Vertex]:
        """J ∪ T ∪ J^⊥."""
        return frozenset(self.J) | frozenset(self.T) | self.Jperp

    # --- J_t-components and the wild recursion sets ---------------------------

    def jt_components(self, t: Vertex) -> List[Component]:
        return j_components(self.diagram, self.J + (t,))

    def U_L(self, t: Vertex, L: Component) -> Tuple[Vertex, ...]:
        return tuple(u for u in self.U_t[t] if any(self.diagram.finite(u, x) for x in L))

    def u_of(self, t: Vertex, L: Component) -> Optional[Vertex]:
        us = self.U_L(t, L)
        return us[0] if us else None

    def wild_sets(self, t: Vertex) -> Dict[Optional[Vertex], WildSets]:
        """V_u, W_u, X_u, Y_u, Z_u for u ∈ U_t ∪ {∞}; key None is ∞."""
        Jt = frozenset(self.J + (t,))
        by_u: Dict[Optional[Vertex], FrozenSet[Vertex]] = {}
        for L in self.jt_components(t):
            u = self.u_of(t, L)
            by_u[u] = by_u.get(u, frozenset()) | L
        partial = {}
        for u in (None,) + self.U_t[t]:
            V = Jt if u is None else Jt | {u}
            W = V | self.diagram.perp(V)
            X = by_u.get(u, frozenset())
            partial[u] = (V, W, X, W | X)
        y_inf = partial[None][3]
        return {u: WildSets(u, V, W, X, Y, Y | y_inf) for u, (V, W, X, Y) in partial.items()}

    # --- guarantees -------------------------------------------------------------

    def guarantee_violations(self) -> List[str]:
        """Structural facts every Δ-edge context satisfies; an empty list means all hold."""
        problems = []
        for i, t in enumerate(self.T):
            for t2 in self.T[i + 1 :]:
                if self.diagram.finite(t, t2):
                    problems.append(f"edge {t}{t2} inside T")
            us = self.U_t[t]
            for i2, u in enumerate(us):
                for u2 in us[i2 + 1 :]:
                    if self.diagram.finite(u, u2):
                        problems.append(f"edge {u}{u2} inside U_{t}")
            if not is_flexible(self.diagram, self.J + (t,)):
                problems.append(f"J_{t} is not flexible")
            for u in us:
                if not is_flexible(self.diagram, self.J + (t, u)):
                    problems.append(f"J_{t},{u} is not flexible")
        for t in self.wild:
            sets = self.wild_sets(t)
            for u, ws in sets.items():
                if degree(self.diagram, self.J, ws.Y) >= self.degree:
                    problems.append(f"degree of Y_{u or 'inf'} does not drop for wild {t}")
                if u is None:
                    continue
                expected = frozenset(self.J + (t,)) | self.diagram.perp(frozenset(self.J + (t, u)))
                if ws.Y & sets[None].Y != expected:
                    problems.append(f"Y_{u} ∩ Y_inf differs from J_t ∪ J_t,u^perp")
                for a, b in self.diagram.edges(ws.Z):
                    if not ({a, b} <= ws.Y or {a, b} <= sets[None].Y):
                        problems.append(f"edge {a}{b} of Z_{u} lies in neither Y_{u} nor Y_inf")
        return problems

    def summary(self) -> Dict[str, object]:
        return {
            "edge": list(self.J),
            "T": list(self.T),
            "T_r": list(self.T_r),
            "T_s": list(self.T_s),
            "U": {t: list(us) for t, us in self.U_t.items()},
            "T3": list(self.T3),
            "T4": list(self.T4),
            "tame": dict(self.tame),
            "degree": self.degree,
            "components": [list(self.diagram.ordered(L)) for L in self.components],
            "t_of": {",".join(self.diagram.ordered(L)): self.t_of(L) for L in self.components},
        }


def edge_context(diagram: Diagram, J: Sequence[Vertex]) -> EdgeContext:
    return EdgeContext(diagram, J)
