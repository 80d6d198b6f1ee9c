"""
Rational polynomials, minimal polynomials of 2cos(2π/n) and Sturm-based
real root isolation.

All decisions here are exact: sympy does the polynomial algebra over QQ and
root isolation uses Sturm sequences evaluated at rational points.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import sympy
from sympy import Poly, QQ, Symbol

from src.utils.errors import InternalInvariantBroken

X = Symbol("x")


def to_fraction(value) -> Fraction:
    """Convert a sympy rational (or int) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


@dataclass(frozen=True)
class RationalPoly:
    """Dense polynomial with rational coefficients, wrapping a sympy Poly over QQ."""

    poly: Poly

    @classmethod
    def from_coefficients(cls, coefficients: Sequence) -> "RationalPoly":
        """Build from coefficients ordered low-to-high."""
        high_to_low = [sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                       for c in reversed(list(coefficients))]
        if not high_to_low:
            high_to_low = [0]
        return cls(Poly(high_to_low, X, domain=QQ))

    @classmethod
    def constant(cls, value) -> "RationalPoly":
        return cls.from_coefficients([to_fraction(value)])

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls(Poly(X, X, domain=QQ))

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        """Coefficients low-to-high; the zero polynomial has none."""
        if self.poly.is_zero:
            return ()
        return tuple(to_fraction(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self) -> int:
        return -1 if self.poly.is_zero else int(self.poly.degree())

    @property
    def is_zero(self) -> bool:
        return bool(self.poly.is_zero)

    def coefficient(self, k: int) -> Fraction:
        coeffs = self.coefficients
        return coeffs[k] if 0 <= k < len(coeffs) else Fraction(0)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.poly + other.poly)

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.poly - other.poly)

    def __mul__(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.poly * other.poly)

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-self.poly)

    def scale(self, factor) -> "RationalPoly":
        f = to_fraction(factor)
        return RationalPoly(self.poly * sympy.Rational(f.numerator, f.denominator))

    def rem(self, modulus: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.poly.rem(modulus.poly))

    def invert(self, modulus: "RationalPoly") -> "RationalPoly":
        """Inverse modulo ``modulus`` via the extended Euclidean algorithm."""
        return RationalPoly(self.poly.invert(modulus.poly))

    def derivative(self) -> "RationalPoly":
        return RationalPoly(self.poly.diff(X))

    def gcd(self, other: "RationalPoly") -> "RationalPoly":
        return RationalPoly(self.poly.gcd(other.poly))

    def evaluate(self, value) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        return horner(self.coefficients, to_fraction(value))

    def __call__(self, value) -> Fraction:
        return self.evaluate(value)

    def __str__(self) -> str:
        return str(self.poly.as_expr())

    def __repr__(self) -> str:
        return f"RationalPoly({self})"


def horner(coefficients_low_to_high: Sequence[Fraction], value: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coefficients_low_to_high):
        acc = acc * value + c
    return acc


@lru_cache(maxsize=256)
def minpoly_two_cos(n: int) -> RationalPoly:
    """
    Minimal polynomial of 2cos(2π/n) over Q.

    For n > 2 the cyclotomic polynomial is palindromic of even degree 2d, so
    Φ_n(x) = x^d Ψ(x + 1/x); Ψ is peeled off from the top degree down.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return RationalPoly(Poly(X - 2, X, domain=QQ))
    if n == 2:
        return RationalPoly(Poly(X + 2, X, domain=QQ))

    cyclotomic = Poly(sympy.cyclotomic_poly(n, X), X, domain=QQ)
    half = cyclotomic.degree() // 2
    remainder = cyclotomic
    psi = Poly(0, X, domain=QQ)
    for k in range(half, -1, -1):
        c = remainder.coeff_monomial(X ** (half + k))
        if c == 0:
            continue
        psi += Poly(c * X**k, X, domain=QQ)
        remainder -= Poly(c * X ** (half - k) * (X**2 + 1) ** k, X, domain=QQ)
    if not remainder.is_zero:
        raise InternalInvariantBroken(f"cyclotomic polynomial of order {n} is not palindromic")
    return RationalPoly(psi)


class SturmSequence:
    """Sturm chain of a square-free polynomial, pre-converted to Fraction lists."""

    def __init__(self, poly: RationalPoly):
        self.poly = poly
        self._chain: List[Tuple[Fraction, ...]] = [
            RationalPoly(p).coefficients for p in sympy.sturm(poly.poly)
        ]

    def variations(self, value: Fraction) -> int:
        signs = []
        for coeffs in self._chain:
            v = horner(coeffs, value)
            if v != 0:
                signs.append(v > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Number of distinct real roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)


@dataclass(frozen=True)
class RootInterval:
    """Rational interval (lo, hi) holding exactly one root; lo == hi means the root is rational."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def bisect(self, poly: RationalPoly) -> "RootInterval":
        """Halve the interval, keeping the half where the polynomial changes sign."""
        if self.exact:
            return self
        mid = (self.lo + self.hi) / 2
        at_mid = poly.evaluate(mid)
        if at_mid == 0:
            return RootInterval(mid, mid)
        if (poly.evaluate(self.lo) > 0) != (at_mid > 0):
            return RootInterval(self.lo, mid)
        return RootInterval(mid, self.hi)


def cauchy_bound(poly: RationalPoly) -> Fraction:
    coeffs = poly.coefficients
    lead = abs(coeffs[-1])
    return 1 + max((abs(c) / lead for c in coeffs[:-1]), default=Fraction(0))


def largest_root_interval(poly: RationalPoly) -> RootInterval:
    """Isolate the largest real root of a square-free polynomial."""
    if poly.degree < 1:
        raise ValueError("constant polynomial has no roots")
    if poly.degree == 1:
        c0, c1 = poly.coefficients
        root = -c0 / c1
        return RootInterval(root, root)

    sturm = SturmSequence(poly)
    bound = cauchy_bound(poly)
    lo, hi = -bound, bound
    if sturm.count(lo, hi) == 0:
        raise ValueError(f"{poly} has no real roots")
    while sturm.count(lo, hi) > 1:
        mid = (lo + hi) / 2
        if poly.evaluate(mid) == 0:
            if sturm.count(mid, hi) == 0:
                return RootInterval(mid, mid)
            mid = (mid + hi) / 2
        if sturm.count(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    if poly.evaluate(hi) == 0:
        return RootInterval(hi, hi)
    return RootInterval(lo, hi)


def is_square_free(poly: RationalPoly) -> bool:
    return poly.gcd(poly.derivative()).degree == 0


def chebyshev_two_cos(k: int, modulus: RationalPoly) -> RationalPoly:
    """C_k with C_0 = 2, C_1 = x, C_{j+1} = x C_j - C_{j-1}, reduced mod ``modulus``."""
    x = RationalPoly.x()
    prev, cur = RationalPoly.constant(2), x
    if k == 0:
        return prev.rem(modulus)
    for _ in range(k - 1):
        prev, cur = cur, (x * cur - prev).rem(modulus)
    return cur.rem(modulus)
