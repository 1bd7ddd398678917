import random
from fractions import Fraction as Q

import pytest

from fracpos.scalars import GaussianRational, I, ONE, ZERO, gaussian


def test_field_operations_are_exact():
    a = gaussian(Q(1, 3), Q(-2, 7))
    b = gaussian(Q(5, 2), Q(1, 6))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * (b + ONE) == a * b + a
    assert -(-a) == a


def test_conjugation_is_an_involution():
    rng = random.Random(7)
    for _ in range(50):
        z = gaussian(Q(rng.randint(-9, 9), rng.randint(1, 5)), Q(rng.randint(-9, 9), rng.randint(1, 5)))
        assert z.conjugate().conjugate() == z
        assert (z * z.conjugate()).is_real()


def test_imaginary_unit():
    assert I * I == -ONE
    assert I.conjugate() == -I
    assert ZERO.is_zero() and not ONE.is_zero()


def test_mixed_arithmetic_with_ints_and_fractions():
    z = gaussian(1, 2)
    assert z + 1 == gaussian(2, 2)
    assert 2 * z == gaussian(2, 4)
    assert z * Q(1, 2) == gaussian(Q(1, 2), 1)
    assert z - Q(1) == gaussian(0, 2)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_text_round_trip_signs():
    assert gaussian(Q(1, 2), Q(-3, 2)).text() == "1/2-3/2*i"
    assert gaussian(-1, 2).text() == "-1+2*i"


def test_immutability_and_hash():
    z = gaussian(1, 1)
    with pytest.raises(AttributeError):
        z.re = Q(2)
    assert hash(gaussian(1, 1)) == hash(z)
