"""
Exact arithmetic in Q(2cos(π/L)).

A NumberField is built from the lcm L of the finite Coxeter labels. Its
primitive element λ = 2cos(π/L) is the largest real root of the modulus and is
located by a Sturm-isolated rational interval that is bisected on demand.
AlgebraicReal values are polynomials in λ reduced modulo the modulus; their
sign is decided by interval evaluation against that interval.
"""

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from src.algebra.polynomials import (
    RationalPoly,
    RootInterval,
    chebyshev_two_cos,
    is_square_free,
    largest_root_interval,
    minpoly_two_cos,
    to_fraction,
)
from src.utils.config_reader import get_config_bool, get_config_int
from src.utils.errors import DivisionByZero, FieldTooLarge, InternalInvariantBroken, NotInField
from src.utils.logging import logger

Number = Union[int, Fraction, "AlgebraicReal"]


def _interval_mul(a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> Tuple[Fraction, Fraction]:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)


def interval_horner(coefficients: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Enclosure of p([lo, hi]) by interval Horner evaluation."""
    if not coefficients:
        return Fraction(0), Fraction(0)
    acc = (coefficients[-1], coefficients[-1])
    for c in reversed(coefficients[:-1]):
        acc = _interval_mul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


class NumberField:
    """Q(λ) with λ = 2cos(π/L)."""

    def __init__(self, lcm: int):
        if lcm < 1:
            raise ValueError(f"lcm must be positive, got {lcm}")
        self.lcm = lcm
        self.modulus = minpoly_two_cos(2 * lcm)
        self.degree = self.modulus.degree
        self._interval = largest_root_interval(self.modulus)
        self._generation = 0
        self._lock = threading.Lock()
        self._two_cos_cache: Dict[int, RationalPoly] = {}
        self._max_refinements = get_config_int("algebra.max_refinements", 4000)
        logger.debug("Field constructed", L=lcm, degree=self.degree, modulus=str(self.modulus))

    def __repr__(self) -> str:
        return f"NumberField(L={self.lcm}, modulus={self.modulus})"

    # --- primitive element ------------------------------------------------

    @property
    def primitive_interval(self) -> RootInterval:
        with self._lock:
            return self._interval

    def _snapshot(self) -> Tuple[int, RootInterval]:
        with self._lock:
            return self._generation, self._interval

    def refine(self, generation: Optional[int] = None) -> None:
        """Bisect the isolating interval once, unless another caller already did."""
        with self._lock:
            if generation is not None and generation != self._generation:
                return
            self._interval = self._interval.bisect(self.modulus)
            self._generation += 1

    def check_square_free(self) -> bool:
        return is_square_free(self.modulus)

    # --- element construction ----------------------------------------------

    def element(self, rep: Union[RationalPoly, Sequence]) -> "AlgebraicReal":
        if not isinstance(rep, RationalPoly):
            rep = RationalPoly.from_coefficients([to_fraction(c) for c in rep])
        return AlgebraicReal(self, rep)

    def rational(self, value) -> "AlgebraicReal":
        return AlgebraicReal(self, RationalPoly.constant(value))

    def zero(self) -> "AlgebraicReal":
        return self.rational(0)

    def one(self) -> "AlgebraicReal":
        return self.rational(1)

    def generator(self) -> "AlgebraicReal":
        return AlgebraicReal(self, RationalPoly.x())

    def two_cos_multiple(self, k: int) -> RationalPoly:
        """2cos(kπ/L) as a polynomial in λ."""
        if k not in self._two_cos_cache:
            self._two_cos_cache[k] = chebyshev_two_cos(k, self.modulus)
        return self._two_cos_cache[k]

    def two_cos(self, label: Union[int, float]) -> RationalPoly:
        """2cos(π/m) for a Coxeter label m; an infinite label gives 2, the Gram entry -1 times -2."""
        if label == math.inf:
            return RationalPoly.constant(2)
        label = int(label)
        if self.lcm % label:
            raise NotInField(f"cos(pi/{label}) is not in Q(2cos(pi/{self.lcm}))", {"label": label})
        return self.two_cos_multiple(self.lcm // label)

    # --- integer kernels for Z[λ] --------------------------------------------

    def integer_vector(self, rep: RationalPoly) -> Tuple[int, ...]:
        coeffs = rep.coefficients
        out = []
        for k in range(self.degree):
            c = coeffs[k] if k < len(coeffs) else Fraction(0)
            if c.denominator != 1:
                raise InternalInvariantBroken(f"{rep} is not an algebraic integer in the power basis")
            out.append(int(c))
        return tuple(out)

    def multiplication_matrix(self, rep: RationalPoly) -> np.ndarray:
        """Integer matrix M with M·v = coefficients of rep·v for power-basis vectors v."""
        columns = []
        power = RationalPoly.constant(1)
        x = RationalPoly.x()
        for _ in range(self.degree):
            columns.append(self.integer_vector((rep * power).rem(self.modulus)))
            power = (power * x).rem(self.modulus)
        matrix = np.empty((self.degree, self.degree), dtype=object)
        for j, col in enumerate(columns):
            for i, value in enumerate(col):
                matrix[i, j] = value
        return matrix

    @property
    def structure_tensor(self) -> np.ndarray:
        """T[p, q, k] = coefficient of λ^k in λ^(p+q) reduced."""
        return _structure_tensor(self.lcm)

    # --- sign decisions -------------------------------------------------------

    def enclosure(self, rep: RationalPoly) -> Tuple[Fraction, Fraction]:
        _, interval = self._snapshot()
        return interval_horner(rep.coefficients, interval.lo, interval.hi)

    def sign_of(self, rep: RationalPoly) -> int:
        if rep.is_zero:
            return 0
        if rep.degree == 0:
            return 1 if rep.coefficient(0) > 0 else -1
        for _ in range(self._max_refinements):
            generation, interval = self._snapshot()
            lo, hi = interval_horner(rep.coefficients, interval.lo, interval.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if interval.exact:
                value = rep.evaluate(interval.lo)
                return (value > 0) - (value < 0)
            self.refine(generation)
        raise InternalInvariantBroken(f"sign of {rep} undecided after {self._max_refinements} refinements")


@lru_cache(maxsize=None)
def _structure_tensor(lcm: int) -> np.ndarray:
    field = field_for_lcm(lcm)
    d = field.degree
    x = RationalPoly.x()
    powers = [RationalPoly.constant(1)]
    for _ in range(2 * d - 2):
        powers.append((powers[-1] * x).rem(field.modulus))
    tensor = np.zeros((d, d, d), dtype=object)
    for p in range(d):
        for q in range(d):
            for k, value in enumerate(field.integer_vector(powers[p + q])):
                tensor[p, q, k] = value
    return tensor


@lru_cache(maxsize=None)
def field_for_lcm(lcm: int) -> NumberField:
    return NumberField(lcm)


def labels_lcm(labels: Iterable[Union[int, float]]) -> int:
    finite = [int(m) for m in labels if m != math.inf]
    return math.lcm(*finite) if finite else 2


def field_for_labels(labels: Iterable[Union[int, float]]) -> NumberField:
    """
    Field Q(2cos(π/L)) for L = lcm of the finite labels.

    Infinite labels contribute -1 to the Gram matrix and never enlarge the
    field; with no finite labels (or only 2) the field is Q.
    """
    lcm = labels_lcm(labels)
    max_lcm = get_config_int("algebra.max_field_lcm", 420)
    if lcm > max_lcm:
        raise FieldTooLarge(f"lcm of labels is {lcm}, above the configured bound {max_lcm}", {"lcm": lcm})
    return field_for_lcm(lcm)


def embed_cos(m: int, field: NumberField) -> "AlgebraicReal":
    """cos(π/m) = C_k(λ)/2 with k = L/m."""
    if m < 1 or field.lcm % m:
        raise NotInField(f"cos(pi/{m}) is not in Q(2cos(pi/{field.lcm}))", {"label": m})
    value = AlgebraicReal(field, field.two_cos_multiple(field.lcm // m).scale(Fraction(1, 2)))
    if get_config_bool("algebra.certify_embeddings", True):
        _certify(value, math.cos(math.pi / m))
    return value


def _certify(value: "AlgebraicReal", expected: float) -> None:
    lo, hi = value.interval(width=Fraction(1, 2**40))
    if not (float(lo) - 1e-9 <= expected <= float(hi) + 1e-9):
        raise InternalInvariantBroken(f"embedding {value} does not enclose {expected}")


class AlgebraicReal:
    """An element of Q(λ), stored as a polynomial in λ of degree below the field degree."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: RationalPoly):
        self.field = field
        self.rep = rep.rem(field.modulus) if rep.degree >= field.degree else rep

    def _coerce(self, other: Number) -> "AlgebraicReal":
        if isinstance(other, AlgebraicReal):
            if other.field is not self.field:
                raise NotInField(f"mixing elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other: Number) -> "AlgebraicReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraicReal(self.field, self.rep + other.rep)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "AlgebraicReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraicReal(self.field, self.rep - other.rep)

    def __rsub__(self, other: Number) -> "AlgebraicReal":
        return (-self) + other

    def __mul__(self, other: Number) -> "AlgebraicReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraicReal(self.field, (self.rep * other.rep).rem(self.field.modulus))

    __rmul__ = __mul__

    def __neg__(self) -> "AlgebraicReal":
        return AlgebraicReal(self.field, -self.rep)

    def inv(self) -> "AlgebraicReal":
        if self.rep.is_zero:
            raise DivisionByZero("inverse of zero")
        return AlgebraicReal(self.field, self.rep.invert(self.field.modulus))

    def __truediv__(self, other: Number) -> "AlgebraicReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Number) -> "AlgebraicReal":
        return self.inv() * other

    def __pow__(self, exponent: int) -> "AlgebraicReal":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- comparison -----------------------------------------------------------

    def sign(self) -> int:
        return self.field.sign_of(self.rep)

    def is_zero(self) -> bool:
        return self.rep.is_zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        return other.field is self.field and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.field.lcm, self.rep.coefficients))

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    def __abs__(self) -> "AlgebraicReal":
        return -self if self.sign() < 0 else self

    # --- inspection -------------------------------------------------------------

    def interval(self, width: Optional[Fraction] = None) -> Tuple[Fraction, Fraction]:
        """Certified enclosure; refines the field until the enclosure is narrower than ``width``."""
        lo, hi = self.field.enclosure(self.rep)
        if width is None or self.rep.degree <= 0:
            return lo, hi
        for _ in range(self.field._max_refinements):
            if hi - lo <= width:
                return lo, hi
            generation, interval = self.field._snapshot()
            if interval.exact:
                return lo, hi
            self.field.refine(generation)
            lo, hi = self.field.enclosure(self.rep)
        raise InternalInvariantBroken(f"could not narrow {self} to width {width}")

    def approx(self) -> float:
        """Float midpoint for display; never used for decisions."""
        lo, hi = self.interval(width=Fraction(1, 2**30))
        return float((lo + hi) / 2)

    def is_rational(self) -> bool:
        return self.rep.degree <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rep.coefficient(0)

    def __repr__(self) -> str:
        return f"AlgebraicReal({str(self.rep.poly.as_expr()).replace('x', 'λ')} in L={self.field.lcm})"

    def __str__(self) -> str:
        return str(self.rep.poly.as_expr()).replace("x", "λ")


def is_two_cos_pi_over(value: AlgebraicReal, q: int) -> bool:
    """Exact test of value == 2cos(π/q)."""
    minpoly = minpoly_two_cos(2 * q)
    acc = value.field.zero()
    for c in reversed(minpoly.coefficients):
        acc = acc * value + c
    if not acc.is_zero():
        return False
    isolating = largest_root_interval(minpoly)
    if isolating.exact:
        return value == isolating.lo
    return (value - isolating.lo).sign() > 0
