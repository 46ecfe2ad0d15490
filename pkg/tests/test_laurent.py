from fractions import Fraction

import pytest
from hypothesis import given

from qmatreps.algebra import LaurentScalar, parse_scalar
from qmatreps.algebra.laurent import format_laurent

from conftest import laurent


def test_arithmetic_collects_terms():
    q = LaurentScalar.monomial(1)
    x = (q - q ** -1) * (q + q ** -1)
    assert x == LaurentScalar({2: 1, -2: -1})
    assert (x - x).is_zero()


def test_evaluate_exact_and_float():
    x = LaurentScalar({2: 1, -1: Fraction(1, 3)})
    assert x.evaluate(Fraction(1, 2)) == Fraction(1, 4) + Fraction(2, 3)
    assert x.evaluate(0.5) == pytest.approx(0.25 + 2 / 3, abs=1e-15)


def test_inverse_only_for_monomials():
    assert LaurentScalar.monomial(3, 2) ** -1 == LaurentScalar({-3: Fraction(1, 2)})
    with pytest.raises(ValueError):
        LaurentScalar({0: 1, 1: 1}) ** -1


def test_format_examples():
    assert format_laurent(LaurentScalar({0: 1, 4: -1})) == "1 - q^4"
    assert format_laurent(LaurentScalar({-1: -1})) == "-q^-1"
    assert format_laurent(LaurentScalar()) == "0"


@given(laurent(), laurent())
def test_ring_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a


@given(laurent())
def test_format_parse_round_trip(x):
    assert parse_scalar(format_laurent(x)) == x


@given(laurent(), laurent())
def test_evaluation_is_a_homomorphism(a, b):
    q = Fraction(2, 3)
    assert (a * b).evaluate(q) == a.evaluate(q) * b.evaluate(q)
