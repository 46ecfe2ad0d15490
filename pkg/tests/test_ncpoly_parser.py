import pytest
from hypothesis import given

from qmatreps.algebra import MAT2, SYM2, LaurentScalar, ParseError, gen, parse_expression
from qmatreps.algebra.ncpoly import format_poly, star

from conftest import ncpoly


def test_generator_names():
    assert gen(SYM2, "z21*").name == "z21*"
    assert gen(MAT2, "z1^2").name == "z1^2"
    with pytest.raises(ValueError):
        gen(SYM2, "z12")


def test_parse_expands_products():
    p = parse_expression("(z21 + z22) z11*", SYM2)
    q = parse_expression("z21 z11* + z22 z11*", SYM2)
    assert p == q


def test_parse_scalars_and_powers():
    p = parse_expression("q (q^2-q^-2) z21^2 z22*", SYM2)
    w = (gen(SYM2, "z21"), gen(SYM2, "z21"), gen(SYM2, "z22*"))
    assert list(p.words()) == [w]
    assert p.coefficient(w) == LaurentScalar({3: 1, -1: -1})


@pytest.mark.parametrize("bad", ["z21 +", "z33", "(z11", "z11 ^ -1", "q^"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_expression(bad, SYM2)


@given(ncpoly(SYM2))
def test_print_parse_round_trip_sym(p):
    assert parse_expression(format_poly(p), SYM2) == p


@given(ncpoly(MAT2))
def test_print_parse_round_trip_mat2(p):
    assert parse_expression(format_poly(p), MAT2) == p


@given(ncpoly(SYM2), ncpoly(SYM2))
def test_star_is_an_antimultiplicative_involution(a, b):
    assert star(star(a)) == a
    assert star(a * b) == star(b) * star(a)
