"""
The deformation of a Δ-edge of degree 0: every H₃ vertex is tame.
"""

from typing import List

from src.diagrams.context import EdgeContext
from src.diagrams.diagram import Diagram
from src.diagrams.flexibility import Component
from src.deform.constructions import k_special_deformation, rank2_special_deformation, standard_deformation
from src.deform.deformation import Deformation
from src.deform.merge import merge
from src.deform.words import SRS
from src.utils.errors import NotAllTame
from src.utils.logging import logger


def hat_deformation(context: EdgeContext) -> Deformation:
    """δ̂ on Ĵ = J ∪ T ∪ J^⊥, glued from the standard maps δ_t, t ∈ T̂."""
    diagram = context.diagram
    result = standard_deformation(context, None)
    for t in context.T:
        result = merge(result, standard_deformation(context, t), diagram)
    return result


def component_deformation(context: EdgeContext, L: Component) -> Deformation:
    """δ_L on K_L = J_L ∪ J^⊥ ∪ L."""
    diagram = context.diagram
    r, s = context.J
    free = context.free(L)
    t = context.t_of(L)
    if t is None:
        a = r if r in free else s
        K_L = frozenset(context.J) | context.Jperp | L
        return rank2_special_deformation(diagram.restrict(K_L), context.J, a, SRS.relabel({"r": r, "s": s}))
    far = context.far(t)
    a = far if far in free else context.neighbour3(t)
    K_t = context.K_t(t)
    K_L = K_t | context.Jperp | L
    return k_special_deformation(diagram.restrict(K_L), context.J, K_t, a)


def tame_deformation(diagram: Diagram, context: EdgeContext) -> Deformation:
    """
    Glue δ̂ with each δ_L over M_L = K_L ∪ T, then glue the M_L over
    J ∪ T ∪ J^⊥. The result is standard on every K_t^def, so all tame
    witnesses are the empty word.
    """
    if context.wild:
        raise NotAllTame(f"wild H3 vertices {list(context.wild)}", {"wild": list(context.wild)})
    hat = hat_deformation(context)
    pieces: List[Deformation] = [merge(component_deformation(context, L), hat, diagram) for L in context.components]
    result = hat
    if pieces:
        result = pieces[0]
        for piece in pieces[1:]:
            result = merge(result, piece, diagram)
    logger.debug(
        "Tame deformation built",
        edge=list(context.J),
        T=list(context.T),
        components=len(context.components),
    )
    return result.noted("tame gluing")