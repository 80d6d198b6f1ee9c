"""
Closed-form deformations: the rank-2 maps behind Θ-edges and the standard and
a-special maps around subsets of type H₃ / H₄.

Each builder returns a Deformation whose edge map names the conjugator of
every edge explicitly, so nothing is searched for afterwards.
"""

from itertools import combinations
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from src.coxcore.matrix import INF
from src.coxcore.reflections import ReflectionSet
from src.coxcore.system import Unbounded
from src.coxcore.words import EMPTY, Word, power_word
from src.diagrams.classification import is_theta_edge
from src.diagrams.context import EdgeContext
from src.diagrams.diagram import Diagram, Vertex
from src.diagrams.flexibility import free_vertices, j_components, perp_fin_inf
from src.deform.deformation import Deformation, EdgeImage, EdgeKey, edge_key
from src.deform.merge import merge
from src.deform.words import StandardWords
from src.roots.angles import is_sharp_angled_pair
from src.utils.errors import (
    CapTooSmall,
    InternalInvariantBroken,
    NotASpecial,
    NotFound,
    NotTame,
    NotThetaEdge,
)
from src.utils.logging import logger


def sharpening_omega(reflections: ReflectionSet, r: Vertex, s: Vertex, cap: int) -> Word:
    """
    ω ∈ ⟨r, s⟩ such that {s, ω r ω⁻¹} is sharp-angled and still generates ⟨r, s⟩.
    For o(rs) = 5 this is srs; otherwise the 2q dihedral elements are tried
    shortest first.
    """
    system = reflections.system
    x, y = reflections[r], reflections[s]
    q = system.order_with_cap(x.element * y.element, cap)
    if isinstance(q, Unbounded):
        raise CapTooSmall(f"order of {r}{s} exceeds cap {cap}", {"cap": cap})
    if is_sharp_angled_pair(x, y, system, cap).sharp:
        raise ValueError(f"{{{r}, {s}}} is already sharp-angled")
    if q == 5:
        return Word((s, r, s))

    seen = set()
    for length in range(q + 1):
        for first, second in ((s, r), (r, s)):
            w = power_word(first, second, length)
            candidate = reflections.replace({r: w})[r]
            if candidate.element in seen or candidate.element == y.element:
                continue
            seen.add(candidate.element)
            if system.order_with_cap(candidate.element * y.element, cap) != q:
                continue
            if is_sharp_angled_pair(candidate, y, system, cap).sharp:
                logger.debug("Sharpening word found", edge=[r, s], order=q, omega=str(w))
                return w
    raise NotFound(f"no sharpening word in <{r}, {s}> of order {q}", {"edge": [r, s], "order": q})


# --- rank 2 ---------------------------------------------------------------------


def _check_twa(diagram: Diagram, J: Sequence[Vertex], K: FrozenSet[Vertex], a: Vertex) -> None:
    perp = diagram.perp(J)
    for x in diagram.vertices:
        if x in K:
            continue
        m = diagram.label(x, a)
        if m not in (2, INF):
            raise NotASpecial("TWa", f"o({x}{a}) = {m} is neither 2 nor inf")
        if m == 2 and x not in perp:
            raise NotASpecial("TWa", f"{x} commutes with {a} but does not lie in J^perp")


def rank2_special_deformation(diagram: Diagram, J: Sequence[Vertex], a: Vertex, omega: Word) -> Deformation:
    """
    For J a-special in S: δ(r) = ωrω⁻¹, δ fixes {s} ∪ J^⊥ and conjugates J^∞ by
    π, where π = 1 if a = r and π = ω if a = s.
    """
    r, s = J
    if a not in (r, s):
        raise ValueError(f"{a} is not an element of J")
    _check_twa(diagram, J, frozenset(J), a)
    perp, _, inf = perp_fin_inf(diagram, J)
    pi = EMPTY if a == r else omega
    conjugators: Dict[Vertex, Word] = {}
    for x in diagram.vertices:
        if x == r:
            conjugators[x] = omega
        elif x in inf:
            conjugators[x] = pi
        else:
            conjugators[x] = EMPTY

    fixed_s, fixed_r, outer = {s} | perp, {r} | perp, inf | perp
    edge_map: Dict[EdgeKey, EdgeImage] = {edge_key(r, s): EdgeImage((r, s))}
    for x, y in diagram.edges():
        E = edge_key(x, y)
        if E == edge_key(r, s):
            continue
        if E <= fixed_s:
            w = EMPTY
        elif E <= fixed_r:
            w = omega
        elif E <= outer:
            w = pi
        else:
            w = EMPTY if a == r else omega
        edge_map[E] = EdgeImage((x, y), w)

    return Deformation(
        J=(r, s),
        omega=omega,
        domain=diagram.vertices,
        conjugators=conjugators,
        edge_map=edge_map,
        trace=(f"rank-2 special map, a={a}",),
        spherical_family=(frozenset(J),),
    )


def theta_deformation(diagram: Diagram, J: Sequence[Vertex], omega: Word) -> Deformation:
    """Glue the rank-2 special maps over K_L = J ∪ L ∪ J^⊥, one per J-component L."""
    r, s = J
    if not is_theta_edge(diagram, J):
        raise NotThetaEdge(f"{r}{s} is not a theta-edge", {"edge": [r, s]})
    perp, _, _ = perp_fin_inf(diagram, J)
    base = frozenset(J) | perp
    components = j_components(diagram, J)
    if not components:
        return rank2_special_deformation(diagram.restrict(base), J, r, omega).noted("theta-edge")

    result: Optional[Deformation] = None
    for L in components:
        a = r if r in free_vertices(diagram, J, L) else s
        piece = rank2_special_deformation(diagram.restrict(base | L), J, a, omega)
        result = piece if result is None else merge(result, piece, diagram)
    logger.debug("Theta deformation built", edge=[r, s], components=len(components))
    return result.noted("theta-edge")


# --- H3 / H4 --------------------------------------------------------------------


def _class_conjugator(x: Vertex, words: StandardWords) -> Word:
    """w_x of the standard map; J^⊥ and u are fixed."""
    roles = words.roles
    if x == roles["r"]:
        return words.srs
    if x == roles.get("t"):
        return words.omega_t
    return EMPTY


def _standard_edge(E: EdgeKey, words: StandardWords, nbr3: Optional[Vertex], far: Optional[Vertex]) -> Word:
    t = words.roles.get("t")
    if t is not None and E == edge_key(nbr3, t):
        return words.omega_t
    if t is not None and E == edge_key(far, t):
        return words.pi_t
    moving = [w for w in (_class_conjugator(x, words) for x in E) if len(w)]
    if len(moving) > 1:
        raise InternalInvariantBroken(f"edge {sorted(E)} has two moving ends in a standard map")
    return moving[0] if moving else EMPTY


def standard_words_for(context: EdgeContext, t: Optional[Vertex]) -> StandardWords:
    if t is None:
        return StandardWords.build(context.r, context.s)
    return StandardWords.build(context.r, context.s, t, context.u_of_t(t), context.side(t))


def standard_deformation(context: EdgeContext, t: Optional[Vertex]) -> Deformation:
    """
    δ_t on K_t^def: r ↦ rsr, s and u_t fixed, t ↦ ω_t·t·ω_t⁻¹ and the identity on
    K_t^⊥. ``t = None`` is the symbol ∞.
    """
    if t is not None and not context.tame.get(t, False):
        raise NotTame(f"{t} is not a tame H3 vertex of {context.r}{context.s}", {"t": t})
    diagram = context.diagram
    words = standard_words_for(context, t)
    domain = diagram.ordered(context.K_def(t))
    nbr3 = context.neighbour3(t) if t is not None else None
    far = context.far(t) if t is not None else None
    J = edge_key(context.r, context.s)

    edge_map: Dict[EdgeKey, EdgeImage] = {J: EdgeImage(context.J)}
    for x, y in diagram.edges(domain):
        E = edge_key(x, y)
        if E != J:
            edge_map[E] = EdgeImage((x, y), _standard_edge(E, words, nbr3, far))
    return Deformation(
        J=context.J,
        omega=words.srs,
        domain=domain,
        conjugators={x: _class_conjugator(x, words) for x in domain},
        edge_map=edge_map,
        tame_witnesses={t: EMPTY} if t is not None else {},
        trace=(f"standard map of K_{t or 'inf'}",),
        spherical_family=(context.K_t(t),),
    )


def _h_roles(diagram: Diagram, J: Sequence[Vertex], K: FrozenSet[Vertex]) -> Tuple[Vertex, Optional[Vertex], str, int]:
    r, s = J
    kind = diagram.type_of(K)
    if kind not in ("H3", "H4") or not set(J) <= K:
        raise NotASpecial("type", f"{sorted(K)} is not of type H3/H4 around {r}{s}")
    t = next(x for x in diagram.ordered(K) if x not in J and diagram.type_of((r, s, x)) == "H3")
    rest = [x for x in K if x not in (r, s, t)]
    side = "s" if diagram.label(s, t) == 3 else "r"
    return t, (rest[0] if rest else None), side, 3 if kind == "H3" else 4


def k_mirror(diagram: Diagram, K: Sequence[Vertex]) -> Tuple[Diagram, Dict[EdgeKey, EdgeKey]]:
    """
    The K-mirror of an H₃ subset K: for x ∈ J^∞ the labels of x to t and to the
    element of J commuting with t are exchanged. Returns the mirror diagram and
    the canonical bijection θ between edge sets.
    """
    K = frozenset(K)
    if diagram.type_of(K) != "H3":
        raise ValueError(f"{sorted(K)} is not of type H3")
    pair = next((a, b) for a in K for b in K if a != b and diagram.label(a, b) == 5)
    t = next(x for x in K if x not in pair)
    far = pair[0] if diagram.label(pair[0], t) == 2 else pair[1]
    _, _, inf = perp_fin_inf(diagram, pair)

    labels = {(a, b): diagram.label(a, b) for a, b in combinations(diagram.vertices, 2)}
    for x in inf:
        labels[(far, x)] = diagram.label(t, x)
        labels[(t, x)] = diagram.label(far, x)
    mirror = Diagram.from_labels(diagram.vertices, labels)

    theta: Dict[EdgeKey, EdgeKey] = {}
    for a, b in diagram.edges():
        E = edge_key(a, b)
        x = next((v for v in E if v in inf), None)
        if x is not None and E - {x} == {far}:
            theta[E] = edge_key(t, x)
        elif x is not None and E - {x} == {t}:
            theta[E] = edge_key(far, x)
        else:
            theta[E] = E
    return mirror, theta


def k_special_deformation(diagram: Diagram, J: Sequence[Vertex], K: Sequence[Vertex], a: Vertex) -> Deformation:
    """
    The map attached to an a-special subset K of type H_k:
    r ↦ rsr, {s} ∪ J^⊥ fixed, t ↦ ω·t·ω⁻¹ and x ↦ γ·x·γ⁻¹ on J^∞, where γ = ω
    when a is the element of J commuting with t and γ = π otherwise.

    For k = 3 with a the element 3-adjacent to t, edges {b, x} and {t, x}
    (b the other element of J, x ∈ J^∞) trade images through the K-mirror.
    """
    r, s = J
    K = frozenset(K)
    t, u, side, k = _h_roles(diagram, J, K)
    words = StandardWords.build(r, s, t, u, side)
    nbr3, far = (s, r) if side == "s" else (r, s)
    if a not in (r, s):
        raise ValueError(f"{a} is not an element of J")

    _check_twa(diagram, J, K, a)
    perp, _, inf = perp_fin_inf(diagram, J)
    k_perp = diagram.perp(K)
    for y in diagram.ordered(perp - K):
        if y in k_perp:
            continue
        if any(diagram.finite(x, y) for x in inf | {t}):
            raise NotASpecial("TWt", f"{y} is joined to J^inf or t but is not in K^perp")

    gamma = words.omega_t if a == far else words.pi_t
    mirrored = k == 3 and a == nbr3
    theta = k_mirror(diagram, K)[1] if mirrored else {}

    conjugators = {x: gamma if x in inf else _class_conjugator(x, words) for x in diagram.vertices}
    edge_map: Dict[EdgeKey, EdgeImage] = {edge_key(r, s): EdgeImage((r, s))}
    for x, y in diagram.edges():
        E = edge_key(x, y)
        if E == edge_key(r, s):
            continue
        outer = [v for v in (x, y) if v in inf]
        if not outer:
            edge_map[E] = EdgeImage((x, y), _standard_edge(E, words, nbr3, far))
            continue
        other = y if x in outer else x
        if other in inf or other in perp:
            edge_map[E] = EdgeImage((x, y), gamma)
        elif a == far:
            edge_map[E] = EdgeImage((x, y), words.omega_t)
        elif not mirrored:
            edge_map[E] = EdgeImage((x, y), words.pi_t)
        else:
            edge_map[E] = EdgeImage(diagram.ordered(theta[E]), words.pi_t)

    note = f"{'mirrored ' if mirrored else ''}H{k} special map, a={a}"
    logger.debug("Special deformation built", edge=[r, s], K=diagram.ordered(K), a=a, mirrored=mirrored)
    return Deformation(
        J=(r, s),
        omega=words.srs,
        domain=diagram.vertices,
        conjugators=conjugators,
        edge_map=edge_map,
        trace=(note,),
        spherical_family=(K,),
    )
