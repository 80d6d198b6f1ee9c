"""
Words over a generator alphabet.

The same Word type carries words in the Coxeter generators R and words in the
names of a reflection set S. All generators are involutions, so the inverse of
a word is its reversal.
"""

from dataclasses import dataclass
from typing import Iterable, Mapping, Tuple, Union

from src.coxcore.matrix import RESERVED_NAMES

Letter = str


@dataclass(frozen=True)
class Word:
    letters: Tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: Union[str, Iterable[Letter]]) -> "Word":
        """
        Parse ``"rsrs"`` letter by letter, ``"s1.s2"`` / ``"s1 s2"`` on separators,
        or take any iterable of letters as-is.
        """
        if isinstance(text, Word):
            return text
        if not isinstance(text, str):
            return cls(tuple(text))
        text = text.strip()
        if text in RESERVED_NAMES:
            return cls(())
        if "." in text or " " in text:
            return cls(tuple(part for part in text.replace(".", " ").split() if part))
        return cls(tuple(text))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __add__(self, other: Union["Word", str, Tuple[Letter, ...]]) -> "Word":
        return Word(self.letters + Word.parse(other).letters)

    def __radd__(self, other: Union[str, Tuple[Letter, ...]]) -> "Word":
        return Word(Word.parse(other).letters + self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(reversed(self.letters)))

    def conjugate(self, letter: Letter) -> "Word":
        """The word w·x·w⁻¹."""
        return Word(self.letters + (letter,) + tuple(reversed(self.letters)))

    def free_reduce(self) -> "Word":
        """Cancel adjacent repeated letters (xx = 1)."""
        stack = []
        for letter in self.letters:
            if stack and stack[-1] == letter:
                stack.pop()
            else:
                stack.append(letter)
        return Word(tuple(stack))

    def relabel(self, mapping: Mapping[Letter, Letter]) -> "Word":
        return Word(tuple(mapping.get(letter, letter) for letter in self.letters))

    def substitute(self, images: Mapping[Letter, "Word"]) -> "Word":
        out = []
        for letter in self.letters:
            out.extend(images[letter].letters)
        return Word(tuple(out))

    def alphabet(self) -> frozenset:
        return frozenset(self.letters)

    def is_conjugate_shape(self) -> bool:
        """Odd length palindrome, i.e. literally of the form w·r·w⁻¹."""
        return len(self.letters) % 2 == 1 and self.letters == tuple(reversed(self.letters))

    def split_conjugate(self) -> Tuple["Word", Letter]:
        """(w, r) for a word of the form w·r·w⁻¹."""
        if not self.is_conjugate_shape():
            raise ValueError(f"{self} is not of the form w r w^-1")
        half = len(self.letters) // 2
        return Word(self.letters[:half]), self.letters[half]

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        if all(len(letter) == 1 for letter in self.letters):
            return "".join(self.letters)
        return ".".join(self.letters)

    def to_json(self) -> list:
        return list(self.letters)


EMPTY = Word(())


def power_word(first: Letter, second: Letter, length: int) -> Word:
    """Alternating word first·second·first·... of the given length."""
    return Word(tuple(first if i % 2 == 0 else second for i in range(length)))
