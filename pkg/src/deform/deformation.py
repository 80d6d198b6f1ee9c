"""
The (r, s, ω)-deformation record.

A deformation never stores images directly: every vertex x carries a conjugator
w_x with δ(x) = w_x·x·w_x⁻¹, and every edge E ≠ J carries the names of its image
pair (a', b') together with w_E such that {δ(a'), δ(b')} = w_E·E·w_E⁻¹. All
words are spelled over the names of S.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.coxcore.reflections import ReflectionSet
from src.coxcore.system import build_system
from src.coxcore.words import EMPTY, Word
from src.diagrams.diagram import Diagram, Vertex
from src.utils.errors import ParseError

EdgeKey = FrozenSet[Vertex]


def edge_key(a: Vertex, b: Vertex) -> EdgeKey:
    return frozenset((a, b))


@dataclass(frozen=True)
class EdgeImage:
    image: Tuple[Vertex, Vertex]
    conjugator: Word = EMPTY


@dataclass
class Deformation:
    J: Tuple[Vertex, Vertex]
    omega: Word
    domain: Tuple[Vertex, ...]
    conjugators: Dict[Vertex, Word]
    edge_map: Dict[EdgeKey, EdgeImage]
    tame_witnesses: Dict[Vertex, Word] = field(default_factory=dict)
    trace: Tuple[str, ...] = ()
    spherical_family: Tuple[FrozenSet[Vertex], ...] = ()

    @property
    def r(self) -> Vertex:
        return self.J[0]

    @property
    def s(self) -> Vertex:
        return self.J[1]

    def __contains__(self, vertex: Vertex) -> bool:
        return vertex in self.conjugators

    def conjugator(self, x: Vertex) -> Word:
        return self.conjugators.get(x, EMPTY)

    def delta(self, x: Vertex) -> Word:
        """δ(x) as the word w_x·x·w_x⁻¹."""
        return self.conjugator(x).conjugate(x)

    def delta_words(self) -> Dict[Vertex, Word]:
        return {x: self.delta(x) for x in self.domain}

    def changed(self) -> Tuple[Vertex, ...]:
        return tuple(x for x in self.domain if len(self.conjugator(x).free_reduce()))

    def restrict(self, subset: Iterable[Vertex]) -> "Deformation":
        keep = set(subset)
        return replace(
            self,
            domain=tuple(x for x in self.domain if x in keep),
            conjugators={x: w for x, w in self.conjugators.items() if x in keep},
            edge_map={E: img for E, img in self.edge_map.items() if E <= keep},
            tame_witnesses={t: w for t, w in self.tame_witnesses.items() if t in keep},
            spherical_family=tuple(K for K in self.spherical_family if K <= keep),
        )

    def noted(self, note: str) -> "Deformation":
        return replace(self, trace=self.trace + (note,))

    def to_json(self) -> Dict[str, Any]:
        edges: List[Dict[str, Any]] = []
        order = {x: i for i, x in enumerate(self.domain)}
        for E in sorted(self.edge_map, key=lambda e: sorted(order.get(v, len(order)) for v in e)):
            img = self.edge_map[E]
            edges.append(
                {
                    "from": sorted(E, key=lambda v: order.get(v, len(order))),
                    "to": list(img.image),
                    "conjugator": img.conjugator.to_json(),
                }
            )
        return {
            "edge": list(self.J),
            "omega": self.omega.to_json(),
            "delta": {x: self.delta(x).to_json() for x in self.domain},
            "edge_map": edges,
            "tame_witnesses": {t: w.to_json() for t, w in self.tame_witnesses.items()},
            "trace": list(self.trace),
            "spherical_family": [sorted(K, key=lambda v: order.get(v, len(order))) for K in self.spherical_family],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Deformation":
        try:
            r, s = data["edge"]
            conjugators = {}
            for x, letters in data["delta"].items():
                w, middle = Word(tuple(letters)).split_conjugate()
                if middle != x:
                    raise ParseError(f"delta({x}) is not a conjugate of {x}", {"vertex": x})
                conjugators[x] = w
            edge_map = {
                edge_key(*item["from"]): EdgeImage(tuple(item["to"]), Word(tuple(item["conjugator"])))
                for item in data.get("edge_map", [])
            }
            return cls(
                J=(r, s),
                omega=Word(tuple(data["omega"])),
                domain=tuple(data["delta"]),
                conjugators=conjugators,
                edge_map=edge_map,
                tame_witnesses={t: Word(tuple(w)) for t, w in data.get("tame_witnesses", {}).items()},
                trace=tuple(data.get("trace", ())),
                spherical_family=tuple(frozenset(K) for K in data.get("spherical_family", ())),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed deformation record: {e}") from e


def inner_compose(g: Word, d: Deformation, note: Optional[str] = None) -> Deformation:
    """Int(g)∘δ: every conjugator, edge conjugator and witness gets g in front."""
    if not len(g.free_reduce()):
        return d if note is None else d.noted(note)
    J = edge_key(*d.J)
    edge_map = {
        E: img if E == J else EdgeImage(img.image, (g + img.conjugator).free_reduce())
        for E, img in d.edge_map.items()
    }
    return replace(
        d,
        conjugators={x: (g + w).free_reduce() for x, w in d.conjugators.items()},
        edge_map=edge_map,
        tame_witnesses={t: (g + w).free_reduce() for t, w in d.tame_witnesses.items()},
        trace=d.trace + ((note or f"Int({g})"),),
        spherical_family=(),
    )


def identity_conjugators(vertices: Sequence[Vertex]) -> Dict[Vertex, Word]:
    return {x: EMPTY for x in vertices}


def abstract_reflections(diagram: Diagram) -> ReflectionSet:
    """S as the simple reflections of its own Coxeter system (⟨S⟩, S)."""
    system = build_system(diagram.matrix)
    return ReflectionSet.from_words(system, {x: Word((x,)) for x in diagram.vertices})
