"""
Coxeter matrices.
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

Label = Union[int, float]
INF = math.inf

# Spellings of the identity accepted by Word.parse.
RESERVED_NAMES = frozenset({"", "1", "e"})


def parse_label(value) -> Label:
    """Accept ints, ``math.inf`` and the strings "inf" / "∞"."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return INF
        value = int(text)
    if isinstance(value, float):
        if value == INF:
            return INF
        if not value.is_integer():
            raise ValueError(f"label {value} is not an integer")
        value = int(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"label {value!r} is not an integer or inf")
    return value


def label_to_json(label: Label):
    return "inf" if label == INF else int(label)


@dataclass(frozen=True)
class CoxeterMatrix:
    generators: Tuple[str, ...]
    entries: Tuple[Tuple[Label, ...], ...]

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise ValueError("generator names must be distinct")
        for name in self.generators:
            if name in RESERVED_NAMES:
                raise ValueError(f"generator name {name!r} is reserved for the identity")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"matrix must be {n}x{n}")
        for i in range(n):
            if self.entries[i][i] != 1:
                raise ValueError(f"diagonal entry {i} must be 1")
            for j in range(i + 1, n):
                m = self.entries[i][j]
                if m != self.entries[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
                if m != INF and (not isinstance(m, int) or m < 2):
                    raise ValueError(f"off-diagonal label at ({i}, {j}) must be >= 2 or inf, got {m}")

    @classmethod
    def from_rows(cls, generators: Sequence[str], rows: Sequence[Sequence]) -> "CoxeterMatrix":
        return cls(tuple(generators), tuple(tuple(parse_label(v) for v in row) for row in rows))

    @classmethod
    def from_labels(cls, generators: Sequence[str], labels: Dict[Tuple[str, str], Label]) -> "CoxeterMatrix":
        """Unlisted pairs default to 2."""
        index = {g: i for i, g in enumerate(generators)}
        rows: List[List[Label]] = [[1 if i == j else 2 for j in range(len(generators))] for i in range(len(generators))]
        for (a, b), m in labels.items():
            rows[index[a]][index[b]] = rows[index[b]][index[a]] = parse_label(m)
        return cls(tuple(generators), tuple(tuple(row) for row in rows))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def label(self, a: str, b: str) -> Label:
        return self.entries[self.index(a)][self.index(b)]

    def labels(self) -> Iterable[Label]:
        n = self.rank
        return [self.entries[i][j] for i in range(n) for j in range(i + 1, n)]

    def to_rows(self) -> List[List]:
        return [[label_to_json(m) for m in row] for row in self.entries]
