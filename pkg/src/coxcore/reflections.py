"""
Reflections, roots and named reflection sets.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra.number_field import AlgebraicReal
from src.coxcore.matrix import CoxeterMatrix, INF
from src.coxcore.system import CoxeterSystem, GroupElement, Unbounded
from src.coxcore.words import Word
from src.utils.errors import CapTooSmall, InternalInvariantBroken
from src.utils.logging import logger


@dataclass(frozen=True)
class Root:
    coords: Tuple[AlgebraicReal, ...]
    positive: bool

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), not self.positive)

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coords]


def canonical_root(coords: Sequence[AlgebraicReal]) -> Root:
    """Sign-canonicalize a root vector: returns the positive one of ±α."""
    signs = [c.sign() for c in coords]
    nonzero = [s for s in signs if s != 0]
    if not nonzero:
        raise InternalInvariantBroken("zero vector is not a root")
    if any(s != nonzero[0] for s in nonzero):
        raise InternalInvariantBroken(f"vector {[str(c) for c in coords]} is neither positive nor negative")
    if nonzero[0] > 0:
        return Root(tuple(coords), True)
    return Root(tuple(-c for c in coords), True)


@dataclass(frozen=True)
class Reflection:
    """w·r·w⁻¹ together with its positive root w(e_r) (up to sign)."""

    element: GroupElement
    root: Root
    conjugator: Word
    generator: str

    @property
    def word(self) -> Word:
        return self.conjugator.conjugate(self.generator)


def reflection_from_conjugate(w: Union[Word, str], r: str, system: CoxeterSystem) -> Reflection:
    w = Word.parse(w).free_reduce()
    conjugator_element = system.eval(w)
    element = system.eval(w.conjugate(r))
    root = canonical_root(conjugator_element.column(system.index(r)))
    return Reflection(element=element, root=root, conjugator=w, generator=r)


def reflection_from_word(word: Union[Word, str], system: CoxeterSystem) -> Reflection:
    w, r = Word.parse(word).split_conjugate()
    return reflection_from_conjugate(w, r, system)


def pair_label(x: Reflection, y: Reflection, system: CoxeterSystem, cap: int):
    """
    o(xy) for two reflections: ∞ exactly when |b(α, β)| >= 1, otherwise the
    order found below ``cap``.
    """
    b = system.bilinear(x.root.coords, y.root.coords)
    if abs(b) >= 1:
        return INF
    order = system.order_with_cap(x.element * y.element, cap)
    if isinstance(order, Unbounded):
        raise CapTooSmall(
            f"order of {x.word}·{y.word} exceeds cap {cap} although |b| < 1",
            {"cap": cap, "pair": [str(x.word), str(y.word)]},
        )
    return order


def coxeter_matrix_of(
    reflections: Union["ReflectionSet", Mapping[str, Reflection]], system: CoxeterSystem, cap: int
) -> CoxeterMatrix:
    items = list(reflections.items())
    n = len(items)
    rows = [[1 if i == j else None for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = pair_label(items[i][1], items[j][1], system, cap)
    return CoxeterMatrix(tuple(name for name, _ in items), tuple(tuple(row) for row in rows))


class ReflectionSet:
    """An ordered, named set S of reflections of (W, R)."""

    def __init__(self, system: CoxeterSystem, records: Mapping[str, Reflection]):
        self.system = system
        self._records: Dict[str, Reflection] = dict(records)
        self._matrix_cache: Dict[int, CoxeterMatrix] = {}

    @classmethod
    def from_words(cls, system: CoxeterSystem, words: Mapping[str, Union[Word, str]]) -> "ReflectionSet":
        return cls(system, {name: reflection_from_word(word, system) for name, word in words.items()})

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self._records)

    def items(self):
        return self._records.items()

    def __getitem__(self, name: str) -> Reflection:
        return self._records[name]

    def __contains__(self, name: str) -> bool:
        return name in self._records

    def __len__(self) -> int:
        return len(self._records)

    def r_word(self, word: Union[Word, str, Sequence[str]]) -> Word:
        """Rewrite a word over S-names as a word over the Coxeter generators."""
        word = Word.parse(word) if not isinstance(word, Word) else word
        return word.substitute({name: rec.word for name, rec in self._records.items()}).free_reduce()

    def evaluate(self, word: Union[Word, str, Sequence[str]]) -> GroupElement:
        return self.system.eval(self.r_word(word))

    def coxeter_matrix(self, cap: int) -> CoxeterMatrix:
        if cap not in self._matrix_cache:
            self._matrix_cache[cap] = coxeter_matrix_of(self, self.system, cap)
        return self._matrix_cache[cap]

    def diagram(self, cap: int):
        """Γ(S) as a Diagram over the names of this set."""
        from src.diagrams.diagram import Diagram

        return Diagram(self.coxeter_matrix(cap))

    def replace(self, conjugators: Mapping[str, Word]) -> "ReflectionSet":
        """
        New set with x replaced by w_x·x·w_x⁻¹, where each w_x is a word over
        the names of this set.
        """
        records = {}
        for name, rec in self._records.items():
            w = conjugators.get(name)
            if w is None or len(w) == 0:
                records[name] = rec
                continue
            conjugator = (self.r_word(w) + rec.conjugator).free_reduce()
            records[name] = reflection_from_conjugate(conjugator, rec.generator, self.system)
        logger.debug("Reflection set updated", changed=[n for n in conjugators if len(conjugators[n])])
        return ReflectionSet(self.system, records)

    def words(self) -> Dict[str, Word]:
        return {name: rec.word for name, rec in self._records.items()}

    def same_elements(self, other: "ReflectionSet") -> bool:
        return self.names == other.names and all(
            self[name].element == other[name].element for name in self.names
        )
