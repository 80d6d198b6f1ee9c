"""
Tests for exact field arithmetic
"""

from fractions import Fraction

import pytest

from src.algebra.number_field import NumberField, embed_cos, field_for_labels, is_two_cos_pi_over
from src.algebra.polynomials import largest_root_interval, minpoly_two_cos
from src.coxcore.matrix import INF
from src.utils.errors import DivisionByZero, FieldTooLarge, NotInField


@pytest.mark.parametrize(
    "n, coefficients",
    [
        (1, (-2, 1)),
        (4, (0, 1)),
        (5, (-1, 1, 1)),
        (10, (-1, -1, 1)),
        (12, (-3, 0, 1)),
    ],
)
def test_minpoly_two_cos(n, coefficients):
    """Minimal polynomials of 2cos(2π/n), lowest coefficient first."""
    assert minpoly_two_cos(n).coefficients == tuple(Fraction(c) for c in coefficients)


def test_minpoly_rejects_non_positive():
    with pytest.raises(ValueError):
        minpoly_two_cos(0)


def test_largest_root_isolates_golden_ratio():
    interval = largest_root_interval(minpoly_two_cos(10))
    assert interval.lo < Fraction(1619, 1000)
    assert interval.hi > Fraction(1618, 1000)


def test_field_for_labels_moduli():
    """The golden field for {5}, Q for labels 2 and inf only."""
    golden = field_for_labels([5])
    assert golden.lcm == 5
    assert golden.modulus.coefficients == (Fraction(-1), Fraction(-1), Fraction(1))
    assert field_for_labels([2, INF]).degree == 1
    assert field_for_labels([INF]).degree == 1
    assert field_for_labels([5, 3, 2]).lcm == 30


def test_field_too_large():
    with pytest.raises(FieldTooLarge) as excinfo:
        field_for_labels([7, 11, 13])
    assert excinfo.value.details["lcm"] == 1001


def test_golden_arithmetic():
    """λ = φ satisfies λ² = λ + 1 and λ⁻¹ = λ - 1."""
    field = NumberField(5)
    phi = field.generator()
    assert phi * phi == phi + 1
    assert phi.inv() == phi - 1
    assert phi / phi == 1
    assert (phi**3) == 2 * phi + 1


def test_inverse_of_zero():
    field = NumberField(5)
    with pytest.raises(DivisionByZero):
        field.zero().inv()


def test_sign_and_comparisons():
    field = NumberField(5)
    phi = field.generator()
    assert phi.sign() == 1
    assert (1 - phi).sign() == -1
    assert phi > Fraction(8, 5)
    assert phi < Fraction(13, 8)
    assert abs(1 - phi) == phi - 1
    assert field.zero().sign() == 0


def test_interval_narrows():
    phi = NumberField(5).generator()
    lo, hi = phi.interval(width=Fraction(1, 10**6))
    assert hi - lo <= Fraction(1, 10**6)
    assert lo <= Fraction(1618033, 10**6) <= hi
    assert phi.approx() == pytest.approx(1.6180339887)


def test_embed_cos():
    golden = NumberField(5)
    assert embed_cos(5, golden) == golden.generator() / 2
    assert embed_cos(1, golden) == -1
    sixfold = field_for_labels([6])
    assert embed_cos(3, sixfold) == Fraction(1, 2)
    assert embed_cos(2, sixfold) == 0
    assert embed_cos(6, sixfold) * embed_cos(6, sixfold) == Fraction(3, 4)


def test_embed_cos_outside_field():
    with pytest.raises(NotInField):
        embed_cos(3, NumberField(5))
    with pytest.raises(NotInField):
        NumberField(5).two_cos(7)


def test_two_cos_of_infinite_label_is_two():
    field = NumberField(5)
    assert field.element(field.two_cos(INF)) == 2


def test_is_two_cos_pi_over():
    golden = NumberField(5)
    phi = golden.generator()
    assert is_two_cos_pi_over(phi, 5)
    # φ - 1 = 2cos(2π/5) has order 5 but is not 2cos(π/5)
    assert not is_two_cos_pi_over(phi - 1, 5)
    assert not is_two_cos_pi_over(phi, 3)
    assert is_two_cos_pi_over(golden.one(), 3)
    assert is_two_cos_pi_over(golden.zero(), 2)


def test_mixing_fields_rejected():
    with pytest.raises(NotInField):
        NumberField(5).generator() + field_for_labels([6]).generator()
