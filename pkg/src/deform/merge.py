"""
Amalgamation of two J-deformations along their common domain.
"""

from typing import Dict, Optional

from src.coxcore.reflections import ReflectionSet
from src.diagrams.diagram import Diagram
from src.deform.deformation import Deformation, EdgeImage, EdgeKey
from src.utils.errors import EdgeNotCovered, IncompatibleOverlap
from src.utils.logging import logger


def _agree(d1: Deformation, d2: Deformation, x: str, evaluator: Optional[ReflectionSet]) -> bool:
    if d1.conjugator(x).free_reduce() == d2.conjugator(x).free_reduce():
        return True
    if evaluator is None:
        return False
    return evaluator.evaluate(d1.delta(x)) == evaluator.evaluate(d2.delta(x))


def merge(
    d1: Deformation,
    d2: Deformation,
    diagram: Diagram,
    evaluator: Optional[ReflectionSet] = None,
    note: Optional[str] = None,
) -> Deformation:
    """
    The deformation of S₁ ∪ S₂ restricting to d1 on S₁ and d2 on S₂.

    Every edge of S₁ ∪ S₂ must lie in S₁ or in S₂, and both maps must agree on
    S₀ = S₁ ∩ S₂ ⊇ J. Agreement is literal after free reduction; with an
    evaluator it falls back to equality of group elements.
    """
    if d1.J != d2.J:
        raise IncompatibleOverlap(f"different edges {list(d1.J)} and {list(d2.J)}")
    S1, S2 = set(d1.domain), set(d2.domain)
    overlap = S1 & S2
    if not set(d1.J) <= overlap:
        raise IncompatibleOverlap(f"J = {list(d1.J)} is not inside the overlap", {"overlap": sorted(overlap)})

    union = diagram.ordered(S1 | S2)
    for a, b in diagram.edges(union):
        if not ({a, b} <= S1 or {a, b} <= S2):
            raise EdgeNotCovered(f"edge {a}{b} lies in neither piece", {"edge": [a, b]})

    for x in diagram.ordered(overlap):
        if not _agree(d1, d2, x, evaluator):
            raise IncompatibleOverlap(
                f"pieces disagree on {x}",
                {"vertex": x, "first": str(d1.delta(x)), "second": str(d2.delta(x))},
            )

    conjugators = {x: d1.conjugator(x) if x in S1 else d2.conjugator(x) for x in union}
    edge_map: Dict[EdgeKey, EdgeImage] = dict(d2.edge_map)
    edge_map.update(d1.edge_map)
    witnesses = dict(d2.tame_witnesses)
    witnesses.update(d1.tame_witnesses)
    family = list(d1.spherical_family)
    family.extend(K for K in d2.spherical_family if K not in family)
    trace = d1.trace + tuple(n for n in d2.trace if n not in d1.trace)
    if note:
        trace += (note,)

    logger.debug("Deformations merged", edge=list(d1.J), size=len(union), overlap=len(overlap))
    return Deformation(
        J=d1.J,
        omega=d1.omega,
        domain=union,
        conjugators=conjugators,
        edge_map=edge_map,
        tame_witnesses=witnesses,
        trace=trace,
        spherical_family=tuple(family),
    )
