from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from qmatreps.algebra import LaurentScalar, NCPoly, generators

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def letters(algebra):
    gs = generators(algebra)
    return gs + tuple(g.star() for g in gs)


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(lambda c: c != 0)


@st.composite
def laurent(draw, max_terms=3):
    terms = draw(st.dictionaries(st.integers(-4, 4), small_fracs, max_size=max_terms))
    return LaurentScalar(terms)


@st.composite
def ncpoly(draw, algebra="sym", max_degree=3, max_terms=3):
    letts = letters(algebra)
    words = draw(st.lists(st.lists(st.sampled_from(letts), max_size=max_degree).map(tuple),
                          min_size=1, max_size=max_terms))
    coeffs = draw(st.lists(laurent(2).filter(lambda x: not x.is_zero()), min_size=len(words), max_size=len(words)))
    return NCPoly(algebra, dict(zip(words, coeffs)))


@pytest.fixture(scope="session")
def half():
    return Fraction(1, 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
