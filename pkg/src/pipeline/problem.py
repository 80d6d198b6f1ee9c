"""
Problem instances: a Coxeter matrix over named generators R and a list S of
reflections given as words w·r·w⁻¹.

Input JSON::

    {
      "generators": ["a", "b"],
      "matrix": [[1, 5], [5, 1]],
      "S": ["a", "bab"],
      "options": {"order_cap": 1000, "group_cap": 20000}
    }

Labels may be integers or "inf". Words are strings ("bab", or "s1.s2.s1" when
generator names are longer than one character) or lists of generator names.
"""

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from src.coxcore.matrix import CoxeterMatrix, label_to_json
from src.coxcore.reflections import ReflectionSet
from src.coxcore.system import CoxeterSystem, build_system
from src.coxcore.words import Word
from src.utils.config_reader import get_config_int
from src.utils.errors import NotAReflection, ParseError
from src.utils.logging import logger

TOP_LEVEL_KEYS = {"generators", "matrix", "S", "options"}
OPTION_KEYS = {"order_cap", "group_cap"}


@dataclass
class ProblemInstance:
    """The pair ((W, R), S) plus the caps used for every order computation."""

    matrix: CoxeterMatrix
    words: Dict[str, Word]
    order_cap: int = field(default_factory=lambda: get_config_int("coxeter.order_cap", 1000))
    group_cap: int = field(default_factory=lambda: get_config_int("coxeter.group_cap", 20000))
    source: Optional[str] = None

    @cached_property
    def system(self) -> CoxeterSystem:
        return build_system(self.matrix)

    @cached_property
    def reflections(self) -> ReflectionSet:
        return ReflectionSet.from_words(self.system, self.words)

    @property
    def names(self) -> List[str]:
        return list(self.words)

    def with_caps(self, order_cap: Optional[int] = None, group_cap: Optional[int] = None) -> "ProblemInstance":
        return ProblemInstance(
            matrix=self.matrix,
            words=dict(self.words),
            order_cap=order_cap or self.order_cap,
            group_cap=group_cap or self.group_cap,
            source=self.source,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generators": list(self.matrix.generators),
            "matrix": [[label_to_json(m) for m in row] for row in self.matrix.entries],
            "S": [w.to_json() for w in self.words.values()],
            "options": {"order_cap": self.order_cap, "group_cap": self.group_cap},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: Optional[str] = None) -> "ProblemInstance":
        if not isinstance(data, Mapping):
            raise ParseError("problem instance must be a JSON object")
        unknown = sorted(set(data) - TOP_LEVEL_KEYS)
        if unknown:
            raise ParseError(f"unknown keys {unknown}", {"keys": unknown})
        missing = sorted({"generators", "matrix", "S"} - set(data))
        if missing:
            raise ParseError(f"missing keys {missing}", {"keys": missing})

        matrix = parse_matrix(data["generators"], data["matrix"])
        words = parse_reflection_words(data["S"], matrix.generators)
        options = parse_options(data.get("options", {}))
        instance = cls(matrix=matrix, words=words, source=source, **options)

        # evaluated once here so malformed conjugates fail at load time
        _ = instance.reflections
        seen: Dict[Any, str] = {}
        for name, rec in instance.reflections.items():
            if rec.element in seen:
                raise ParseError(f"{name} and {seen[rec.element]} are the same reflection", {"names": [seen[rec.element], name]})
            seen[rec.element] = name

        logger.info(
            "Problem instance loaded",
            source=source,
            rank=matrix.rank,
            S=list(words),
            order_cap=instance.order_cap,
            group_cap=instance.group_cap,
        )
        return instance


def parse_matrix(generators: Any, rows: Any) -> CoxeterMatrix:
    if not isinstance(generators, list) or not all(isinstance(g, str) and g for g in generators):
        raise ParseError("generators must be a list of non-empty strings")
    if len(set(generators)) != len(generators):
        raise ParseError("duplicate generator names", {"generators": generators})
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ParseError("matrix must be a list of rows")
    try:
        return CoxeterMatrix.from_rows(generators, rows)
    except (ValueError, TypeError) as e:
        raise ParseError(f"invalid Coxeter matrix: {e}") from e


def _parse_word(raw: Union[str, Sequence[str]], generators: Sequence[str]) -> Word:
    if isinstance(raw, str):
        if "." in raw or " " in raw or all(len(g) == 1 for g in generators):
            return Word.parse(raw)
        # multi-letter names without separators: greedy longest match
        letters, rest = [], raw.strip()
        by_length = sorted(generators, key=len, reverse=True)
        while rest:
            match = next((g for g in by_length if rest.startswith(g)), None)
            if match is None:
                raise ParseError(f"cannot split {raw!r} into generator names")
            letters.append(match)
            rest = rest[len(match):]
        return Word(tuple(letters))
    if isinstance(raw, list) and all(isinstance(x, str) for x in raw):
        return Word(tuple(raw))
    raise ParseError(f"word {raw!r} must be a string or a list of generator names")


def parse_reflection_words(raw_words: Any, generators: Sequence[str]) -> Dict[str, Word]:
    """Name each element of S by its reduced word; reject the identity and non-conjugates."""
    if not isinstance(raw_words, list) or not raw_words:
        raise ParseError("S must be a non-empty list of words")
    max_rank = get_config_int("diagrams.max_rank", 16)
    if len(raw_words) > max_rank:
        raise ParseError(f"|S| = {len(raw_words)} exceeds diagrams.max_rank = {max_rank}")

    known = set(generators)
    words: Dict[str, Word] = {}
    for index, raw in enumerate(raw_words):
        word = _parse_word(raw, generators)
        unknown = sorted(word.alphabet() - known)
        if unknown:
            raise ParseError(f"S[{index}] uses unknown generators {unknown}", {"index": index})
        word = word.free_reduce()
        if not len(word):
            raise NotAReflection(index, f"S[{index}] is the identity")
        if not word.is_conjugate_shape():
            raise NotAReflection(index, f"S[{index}] = {word} is not of the form w r w^-1")
        name = str(word)
        if name in words:
            raise ParseError(f"S[{index}] = {name} is listed twice", {"index": index})
        words[name] = word
    return words


def parse_options(raw: Any) -> Dict[str, int]:
    if not isinstance(raw, Mapping):
        raise ParseError("options must be an object")
    unknown = sorted(set(raw) - OPTION_KEYS)
    if unknown:
        raise ParseError(f"unknown options {unknown}", {"keys": unknown})
    options = {}
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ParseError(f"option {key} must be a positive integer", {"option": key})
        options[key] = value
    return options


def load(path: str) -> ProblemInstance:
    try:
        with open(path, "r", encoding="utf-8") as fp:
            data = json.load(fp)
    except FileNotFoundError as e:
        raise ParseError(f"input file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e}") from e
    return ProblemInstance.from_dict(data, source=path)
