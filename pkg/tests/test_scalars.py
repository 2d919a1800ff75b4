from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finitude.scalars import I, ONE, ZERO, Gaussian

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
gaussians = st.builds(Gaussian, rationals, rationals)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO and a * ONE == a


@given(gaussians)
def test_inverse_and_conjugate(a):
    if a:
        assert a * (ONE / a) == ONE
    assert (a * a.conj()).im == 0
    assert (a * a.conj()).re == a.abs_sq()
    assert a.conj().conj() == a


@given(gaussians)
def test_json_round_trip(a):
    assert Gaussian.from_json(a.to_json()) == a


def test_short_json_forms():
    assert Gaussian.from_json([3, 4]) == Gaussian(Fraction(3, 4))
    assert Gaussian.from_json(2) == Gaussian(2)
    with pytest.raises(ValueError):
        Gaussian.from_json([1, 2, 3])


def test_i_squared():
    assert I * I == -ONE
    assert Gaussian(1, 1).abs_sq() == 2


def test_mixed_arithmetic():
    assert Gaussian(1, 2) + 1 == Gaussian(2, 2)
    assert Fraction(1, 2) * Gaussian(2) == ONE
    assert hash(Gaussian(3)) == hash(Gaussian(Fraction(6, 2)))


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 5


def test_json_shapes():
    assert Gaussian(Fraction(3, 4)).to_json() == [3, 4]
    assert Gaussian(1, Fraction(-1, 2)).to_json() == [1, 1, -1, 2]
