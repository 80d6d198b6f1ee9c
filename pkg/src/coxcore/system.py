"""
Geometric representation of a Coxeter system with exact group elements.

Generator ρ_r sends x to x - 2b(x, e_r)e_r. Its matrix entries are 0, ±1 or
2cos(π/m), all algebraic integers in Z[λ] with λ = 2cos(π/L), so every group
element is stored as an n x n x d tensor of Python ints: entry (i, j) is the
coefficient vector of the matrix entry in the power basis 1, λ, ..., λ^(d-1).
Products use the field's structure tensor; multiplying by a single generator
touches one row (left) or one column (right).
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.algebra.number_field import AlgebraicReal, NumberField, field_for_labels
from src.coxcore.matrix import CoxeterMatrix, INF
from src.coxcore.words import EMPTY, Word
from src.utils.logging import logger


@dataclass(frozen=True)
class Unbounded:
    """No k <= cap with g^k = 1."""

    cap: int


class CoxeterSystem:
    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self.generators = matrix.generators
        self.rank = matrix.rank
        self.field: NumberField = field_for_labels(matrix.labels())
        self.degree = self.field.degree
        self._tensor = self.field.structure_tensor

        n, d = self.rank, self.degree
        # coupling[r] lists (j, M) with M the multiplication matrix of 2cos(π/m_rj)
        self._coupling: List[List[Tuple[int, np.ndarray]]] = []
        gram_rows = []
        for i in range(n):
            row_coupling = []
            gram_row = []
            for j in range(n):
                if i == j:
                    gram_row.append(self.field.one())
                    continue
                two_cos = self.field.two_cos(matrix.entries[i][j])
                gram_row.append(-self.field.element(two_cos) / 2)
                if not two_cos.is_zero:
                    row_coupling.append((j, self.field.multiplication_matrix(two_cos)))
            self._coupling.append(row_coupling)
            gram_rows.append(tuple(gram_row))
        self.gram: Tuple[Tuple[AlgebraicReal, ...], ...] = tuple(gram_rows)

        identity = np.zeros((n, n, d), dtype=object)
        for i in range(n):
            identity[i, i, 0] = 1
        self._identity = identity
        self._identity_key = tuple(identity.ravel().tolist())
        self.gen_matrices: Tuple[GroupElement, ...] = tuple(
            GroupElement(self, self.left_multiply(r, identity), Word((name,)))
            for r, name in enumerate(self.generators)
        )
        logger.debug("Coxeter system built", generators=list(self.generators), L=self.field.lcm, degree=d)

    def __repr__(self) -> str:
        return f"CoxeterSystem({list(self.generators)}, L={self.field.lcm})"

    def index(self, name: str) -> int:
        return self.matrix.index(name)

    def generator_element(self, element: "GroupElement") -> Optional[int]:
        """Index r when ``element`` is the generator ρ_r itself, judged by its matrix."""
        if element.witness is None or len(element.witness) != 1:
            return None
        letter = element.witness.letters[0]
        if letter not in self.generators:
            return None
        r = self.index(letter)
        generator = self.gen_matrices[r]
        if element is generator or element.key == generator.key:
            return r
        return None

    # --- matrix kernels -------------------------------------------------------

    def left_multiply(self, r: int, matrix: np.ndarray) -> np.ndarray:
        """ρ_r · M: row r becomes -row_r + Σ_j 2cos(π/m_rj)·row_j."""
        out = matrix.copy()
        new_row = -matrix[r]
        for j, mult in self._coupling[r]:
            new_row = new_row + matrix[j].dot(mult.T)
        out[r] = new_row
        return out

    def right_multiply(self, matrix: np.ndarray, r: int) -> np.ndarray:
        """M · ρ_r: column r is negated and 2cos(π/m_rj)·column_r is added to column j."""
        out = matrix.copy()
        column = matrix[:, r]
        out[:, r] = -column
        for j, mult in self._coupling[r]:
            out[:, j] = matrix[:, j] + column.dot(mult.T)
        return out

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        mixed = np.tensordot(a, self._tensor, axes=([2], [0]))
        product = np.tensordot(mixed, b, axes=([1, 2], [0, 2]))
        return product.transpose(0, 2, 1)

    # --- elements -------------------------------------------------------------

    def identity(self) -> "GroupElement":
        return GroupElement(self, self._identity, EMPTY)

    def eval(self, word: Union[Word, str, Sequence[str]]) -> "GroupElement":
        """Product of generator matrices; the empty word is the identity."""
        word = Word.parse(word)
        matrix = self._identity
        for letter in reversed(word.letters):
            matrix = self.left_multiply(self.index(letter), matrix)
        return GroupElement(self, matrix, word)

    def order_with_cap(self, g: "GroupElement", cap: int) -> Union[int, Unbounded]:
        power = g
        for k in range(1, cap + 1):
            if power.is_identity():
                return k
            power = power * g
        return Unbounded(cap)

    def to_field(self, coefficients: Sequence[int]) -> AlgebraicReal:
        return self.field.element(list(coefficients))

    def bilinear(self, alpha: Sequence[AlgebraicReal], beta: Sequence[AlgebraicReal]) -> AlgebraicReal:
        """b(α, β) = αᵀ G β."""
        total = self.field.zero()
        for i, a in enumerate(alpha):
            if a.is_zero():
                continue
            row = self.field.zero()
            for j, b in enumerate(beta):
                if not b.is_zero():
                    row = row + self.gram[i][j] * b
            total = total + a * row
        return total


class GroupElement:
    """Exact matrix in O(V, b) with an optional defining word over the generators."""

    __slots__ = ("system", "matrix", "witness", "_key")

    def __init__(self, system: CoxeterSystem, matrix: np.ndarray, witness: Optional[Word] = None):
        self.system = system
        self.matrix = matrix
        self.witness = witness
        self._key = None

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(self.matrix.ravel().tolist())
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system is other.system and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        witness = None
        if self.witness is not None and other.witness is not None:
            witness = (self.witness + other.witness).free_reduce()
        generator = self.system.generator_element(other)
        if generator is not None:
            matrix = self.system.right_multiply(self.matrix, generator)
            return GroupElement(self.system, matrix, witness)
        return GroupElement(self.system, self.system.multiply(self.matrix, other.matrix), witness)

    def left_by(self, letter: str) -> "GroupElement":
        """letter · self, via a single row update."""
        matrix = self.system.left_multiply(self.system.index(letter), self.matrix)
        witness = None if self.witness is None else (Word((letter,)) + self.witness)
        return GroupElement(self.system, matrix, witness)

    def right_by(self, letter: str) -> "GroupElement":
        matrix = self.system.right_multiply(self.matrix, self.system.index(letter))
        witness = None if self.witness is None else (self.witness + Word((letter,)))
        return GroupElement(self.system, matrix, witness)

    def inverse(self) -> "GroupElement":
        if self.witness is None:
            raise ValueError("inverse needs a witness word")
        return self.system.eval(self.witness.inverse())

    def conjugate_by(self, g: "GroupElement") -> "GroupElement":
        """g · self · g⁻¹."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return self.key == self.system._identity_key

    def is_involution(self) -> bool:
        return not self.is_identity() and (self * self).is_identity()

    def column(self, j: int) -> Tuple[AlgebraicReal, ...]:
        """Image of the basis vector e_j."""
        return tuple(self.system.to_field(self.matrix[i, j]) for i in range(self.system.rank))

    def entry(self, i: int, j: int) -> AlgebraicReal:
        return self.system.to_field(self.matrix[i, j])

    def apply(self, vector: Sequence[AlgebraicReal]) -> Tuple[AlgebraicReal, ...]:
        n = self.system.rank
        field = self.system.field
        out = []
        for i in range(n):
            acc = field.zero()
            for j in range(n):
                if not vector[j].is_zero():
                    acc = acc + self.entry(i, j) * vector[j]
            out.append(acc)
        return tuple(out)

    def __repr__(self) -> str:
        return f"GroupElement({self.witness if self.witness is not None else '?'})"


def build_system(matrix: CoxeterMatrix) -> CoxeterSystem:
    return CoxeterSystem(matrix)
