"""
Deformations of Δ-edges of positive degree, by recursion on the degree.

For a wild t, each u ∈ Û_t = U_t ∪ {∞} has a set Y_u of smaller degree. The
recursive deformation θ_u of Y_u is moved back to the standard map on W_u with
its own witness, twisted by τ_u and glued over Z_u = Y_u ∪ Y_∞ and then over
the union of all Z_u.
"""

from typing import Dict, Optional

from src.coxcore.reflections import ReflectionSet
from src.coxcore.words import EMPTY, Word
from src.diagrams.context import EdgeContext
from src.diagrams.diagram import Diagram, Vertex
from src.deform.deformation import Deformation, abstract_reflections, inner_compose
from src.deform.merge import merge
from src.deform.tame import tame_deformation
from src.deform.words import StandardWords
from src.utils.errors import DegreeNotDecreasing, InternalInvariantBroken
from src.utils.logging import logger


def _twist(context: EdgeContext, t: Vertex, u: Optional[Vertex]) -> Word:
    if u is None:
        return EMPTY
    return StandardWords.build(context.r, context.s, t, u, context.side(t)).tau


def wild_deformation(
    diagram: Diagram,
    context: EdgeContext,
    evaluator: Optional[ReflectionSet] = None,
    depth: int = 0,
) -> Deformation:
    if not context.wild:
        return tame_deformation(diagram, context)
    evaluator = evaluator or abstract_reflections(diagram)
    t = context.wild[0]
    U_t = context.U_t[t]
    if not U_t:
        raise InternalInvariantBroken(f"wild vertex {t} has no H4 completion", {"t": t})
    sets = context.wild_sets(t)
    log = logger.bind(edge=list(context.J), t=t, depth=depth)
    log.info("Wild recursion", degree=context.degree, U=list(U_t))

    pieces: Dict[Optional[Vertex], Deformation] = {}
    for u, ws in sets.items():
        sub = diagram.restrict(ws.Y)
        sub_context = EdgeContext(sub, context.J)
        if sub_context.degree >= context.degree:
            raise DegreeNotDecreasing(
                f"degree of Y_{u or 'inf'} is {sub_context.degree}, not below {context.degree}",
                {"u": u, "degree": sub_context.degree},
            )
        theta_u = delta_edge_deformation(sub, context.J, evaluator=evaluator, context=sub_context, depth=depth + 1)
        witness = theta_u.tame_witnesses.get(t)
        if witness is None:
            raise InternalInvariantBroken(f"no witness for {t} in the deformation of Y_{u or 'inf'}", {"t": t})
        g = (_twist(context, t, u) + witness.inverse()).free_reduce()
        pieces[u] = inner_compose(g, theta_u, note=f"normalized and twisted on Y_{u or 'inf'}")

    glued: Optional[Deformation] = None
    for u in U_t:
        z_u = merge(pieces[u], pieces[None], diagram, evaluator, note=f"glued over Z_{u}")
        glued = z_u if glued is None else merge(glued, z_u, diagram, evaluator, note=f"glued over C_{u}")

    if set(glued.domain) != set(diagram.vertices):
        raise InternalInvariantBroken(
            "the Z_u do not cover S", {"missing": sorted(set(diagram.vertices) - set(glued.domain))}
        )

    witnesses: Dict[Vertex, Word] = {}
    for t2 in context.T:
        if not context.tame[t2]:
            continue
        K_def = context.K_def(t2)
        holders = [u for u, ws in sets.items() if K_def <= ws.Y]
        if not holders:
            raise InternalInvariantBroken(f"no Y_u contains K_{t2}^def", {"t": t2})
        holder = holders[0]
        witness = pieces[holder].tame_witnesses.get(t2)
        if witness is None:
            raise InternalInvariantBroken(f"witness for {t2} lost on Y_{holder or 'inf'}", {"t": t2})
        witnesses[t2] = witness
    glued.tame_witnesses = witnesses
    return glued.noted(f"wild step at {t}")


def delta_edge_deformation(
    diagram: Diagram,
    J,
    evaluator: Optional[ReflectionSet] = None,
    context: Optional[EdgeContext] = None,
    depth: int = 0,
) -> Deformation:
    """A tame (r, s, srs)-deformation of S for the Δ-edge J with o(rs) = 5."""
    context = context or EdgeContext(diagram, J)
    if context.degree == 0:
        return tame_deformation(diagram, context)
    return wild_deformation(diagram, context, evaluator=evaluator, depth=depth)
