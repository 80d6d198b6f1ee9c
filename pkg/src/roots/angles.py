"""
Sharp angles and root subbases.

All decisions are exact: |b| >= 1 is a sign test, and membership of 2|b| in
{2cos(π/q)} is decided by the minimal polynomial of 2cos(π/q) plus the
isolating interval of its largest root.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from src.algebra.number_field import AlgebraicReal, is_two_cos_pi_over
from src.coxcore.matrix import INF, Label
from src.coxcore.reflections import (
    Reflection,
    ReflectionSet,
    Root,
    coxeter_matrix_of,
    reflection_from_conjugate,
)
from src.coxcore.system import CoxeterSystem, Unbounded
from src.coxcore.words import Word
from src.utils.errors import CapTooSmall, InfiniteOrderPair
from src.utils.logging import logger

Coordinates = Union[Root, Sequence[AlgebraicReal]]


def _coords(alpha: Coordinates) -> Sequence[AlgebraicReal]:
    return alpha.coords if isinstance(alpha, Root) else alpha


def pairing(alpha: Coordinates, beta: Coordinates, system: CoxeterSystem) -> AlgebraicReal:
    """b(α, β) = αᵀ·G·β."""
    return system.bilinear(_coords(alpha), _coords(beta))


@dataclass(frozen=True)
class AngleClass:
    b_value: AlgebraicReal
    order_q: Label
    sharp: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "b": str(self.b_value),
            "b_approx": round(self.b_value.approx(), 12),
            "order": "inf" if self.order_q == INF else self.order_q,
            "sharp": self.sharp,
        }


def is_sharp_angled_pair(x: Reflection, y: Reflection, system: CoxeterSystem, cap: int) -> AngleClass:
    """
    Sharp iff 2|b(α, β)| = 2cos(π/q) for q = o(xy). Pairs of infinite order
    are outside the definition and raise InfiniteOrderPair.
    """
    if x.element == y.element:
        raise ValueError("a pair of equal reflections has no angle")
    b = pairing(x.root, y.root, system)
    magnitude = abs(b)
    if magnitude >= 1:
        raise InfiniteOrderPair(
            f"|b| = {magnitude} >= 1 for {x.word} and {y.word}", {"pair": [str(x.word), str(y.word)]}
        )
    q = system.order_with_cap(x.element * y.element, cap)
    if isinstance(q, Unbounded):
        raise CapTooSmall(f"order of {x.word}·{y.word} exceeds cap {cap}", {"cap": cap})
    return AngleClass(b, q, is_two_cos_pi_over(magnitude * 2, q))


def angle_class(x: Reflection, y: Reflection, system: CoxeterSystem, cap: int) -> AngleClass:
    """Like is_sharp_angled_pair, but an infinite-order pair gives order ∞ and sharp None."""
    b = pairing(x.root, y.root, system)
    if abs(b) >= 1:
        return AngleClass(b, INF, None)
    return is_sharp_angled_pair(x, y, system, cap)


@dataclass(frozen=True)
class SharpnessVerdict:
    sharp: bool
    offending: Tuple[Tuple[str, str], ...] = ()
    angles: Dict[Tuple[str, str], AngleClass] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.sharp


def is_sharp_angled_set(
    reflections: Union[ReflectionSet, Mapping[str, Reflection]], system: CoxeterSystem, cap: int
) -> SharpnessVerdict:
    """Apply the pair test to every pair of finite order; report the non-sharp ones."""
    items = list(reflections.items())
    offending: List[Tuple[str, str]] = []
    angles: Dict[Tuple[str, str], AngleClass] = {}
    for (a, x), (b, y) in combinations(items, 2):
        angle = angle_class(x, y, system, cap)
        angles[(a, b)] = angle
        if angle.sharp is False:
            offending.append((a, b))
    if offending:
        logger.debug("Non-sharp edges found", edges=[list(e) for e in offending])
    return SharpnessVerdict(not offending, tuple(offending), angles)


def is_root_subbase(roots: Sequence[Root], system: CoxeterSystem) -> bool:
    """
    Positive roots whose pairwise b values are <= -1 or equal to -cos(π/m)
    for some m in 2..2L+1.
    """
    if not all(root.positive and all(c.sign() >= 0 for c in root.coords) for root in roots):
        return False
    top = 2 * system.field.lcm + 1
    for alpha, beta in combinations(roots, 2):
        b = pairing(alpha, beta, system)
        if b <= -1:
            continue
        if b.sign() > 0:
            return False
        if not any(is_two_cos_pi_over(-b * 2, m) for m in range(2, top + 1)):
            return False
    return True


def is_fundamental_by_subbase(reflections: Sequence[Reflection], system: CoxeterSystem) -> bool:
    """Sufficient condition only: the positive roots of the set form a root subbase."""
    return is_root_subbase([rec.root for rec in reflections], system)


# --- subbases attached to the DE3 / DE4 patterns --------------------------------


@dataclass(frozen=True)
class SubbaseCertificate:
    pattern: str
    omega: Word
    reflections: Tuple[Reflection, ...]
    conjugation_holds: bool
    is_subbase: bool
    is_circuit: bool
    swaps_to_neighbour: bool

    @property
    def holds(self) -> bool:
        return self.conjugation_holds and self.is_subbase and self.is_circuit and self.swaps_to_neighbour


def _is_chordfree_circuit(matrix_rows: Sequence[Sequence[Label]]) -> bool:
    n = len(matrix_rows)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((i, j) for i in range(n) for j in range(i + 1, n) if matrix_rows[i][j] != INF)
    return n >= 3 and nx.is_connected(graph) and all(d == 2 for _, d in graph.degree())


def template_subbase(system: CoxeterSystem, roles: Mapping[str, str], path: Sequence[str], cap: int) -> SubbaseCertificate:
    """
    For a Coxeter system (W, R) whose diagram matches DE3 (roles r, s, t) or
    DE4 (roles r, s, t, u, x), build the subbase Π = {α, e_t or e_u, e_x, e_S(i)}
    with α = rs(e_r) resp. srstrs(e_r), and check that ρ_α = ω r ω⁻¹, that Π
    is a root subbase, that the new generators form a chordfree circuit and
    that ω s ω⁻¹ is the neighbour t resp. u.
    """
    r, s, t = roles["r"], roles["s"], roles["t"]
    if "u" in roles:
        u = roles["u"]
        pattern = "DE4"
        conjugator = Word((s, r, s, t, r, s))
        omega = conjugator + Word((u, t))
        others = [u, roles["x"], *path]
        neighbour = u
    else:
        pattern = "DE3"
        conjugator = Word((r, s))
        omega = Word((r, s, t))
        others = [t, *path]
        neighbour = t
    alpha = reflection_from_conjugate(conjugator, r, system)
    records = (alpha,) + tuple(reflection_from_conjugate(Word(), v, system) for v in others)

    conjugation_holds = alpha.element == system.eval(omega.conjugate(r))
    swaps = system.eval(omega.conjugate(s)) == system.eval(Word((neighbour,)))
    is_subbase = is_root_subbase([rec.root for rec in records], system)
    matrix = coxeter_matrix_of({f"p{i}": rec for i, rec in enumerate(records)}, system, cap)
    certificate = SubbaseCertificate(
        pattern=pattern,
        omega=omega,
        reflections=records,
        conjugation_holds=conjugation_holds,
        is_subbase=is_subbase,
        is_circuit=_is_chordfree_circuit(matrix.entries),
        swaps_to_neighbour=swaps,
    )
    logger.debug("Pattern subbase checked", pattern=pattern, holds=certificate.holds)
    return certificate
