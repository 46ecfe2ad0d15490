import csv
import io
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmatreps.orbits import (OrbitClass, class_distance, classify_seed, iterate, locate_seed, match_spectrum,
                             orbit_point, step, sweep_csv)

coords = st.floats(-2, 2, allow_nan=False)
qs = st.floats(0.1, 0.9)
fracs = st.fractions(-2, 2, max_denominator=50)


@given(coords, coords, qs, st.sampled_from([1, 2]))
def test_steps_invert(x1, x2, q, k):
    p = step(step((x1, x2), k, "fwd", q), k, "inv", q)
    assert p[0] == pytest.approx(x1, abs=1e-9) and p[1] == pytest.approx(x2, abs=1e-9)


@given(fracs, fracs, st.sampled_from([1, 2]))
def test_steps_invert_exactly(x1, x2, k):
    q = Fraction(1, 3)
    assert tuple(step(step((x1, x2), k, "inv", q), k, "fwd", q)) == (x1, x2)


@given(fracs, fracs)
def test_F1_and_F2_commute(x1, x2):
    q = Fraction(2, 5)
    a = step(step((x1, x2), 1, "fwd", q), 2, "fwd", q)
    b = step(step((x1, x2), 2, "fwd", q), 1, "fwd", q)
    assert a == b


@given(fracs, fracs, st.integers(-3, 3), st.integers(-3, 3))
def test_closed_form_matches_iteration(x1, x2, m, n):
    q = Fraction(1, 2)
    assert tuple(orbit_point((x1, x2), m, n, q)) == tuple(iterate((x1, x2), m, n, q))


def test_known_point_exact():
    assert tuple(orbit_point((Fraction(0), Fraction(0)), 1, 1, Fraction(1, 2))) == (Fraction(3, 64), Fraction(15, 16))
    assert tuple(orbit_point((0.0, 0.0), 1, 1, 0.5)) == (0.046875, 0.9375)


@pytest.mark.parametrize("seed,cls", [((0, 1), "Omega01"), ((1, 0), "Omega10"), ((0, 0), "Omega00"),
                                      ((0.5, 0), "Inadmissible"), ((0.5, 0.5), "Inadmissible")])
def test_classification(seed, cls):
    assert classify_seed(seed, 0.5).value == cls


def test_lattice_coordinates():
    v = locate_seed(orbit_point((0, 0), 3, 2, 0.5), 0.5)
    assert (v.orbit, v.m, v.n) == (OrbitClass.OMEGA00, 3, 2)
    v = locate_seed((Fraction(1, 256), Fraction(255, 256)), Fraction(1, 2))
    assert (v.orbit, v.n) == (OrbitClass.OMEGA10, 2)


def test_exact_classification_has_no_tolerance():
    near = (Fraction(1, 2) + Fraction(1, 10 ** 12), Fraction(0))
    assert classify_seed(near, Fraction(1, 2)) is OrbitClass.INADMISSIBLE


def test_match_spectrum_ignores_accumulation_point():
    pts = [orbit_point((1, 0), 0, n, 0.5) for n in range(5)] + [(0.0, 1.0)]
    cls, resid = match_spectrum(pts, 0.5)
    assert cls is OrbitClass.OMEGA10 and resid < 1e-12
    assert match_spectrum([(0.0, 1.0)], 0.5)[0] is OrbitClass.OMEGA01
    cls, resid = match_spectrum([(0.3, 0.3)], 0.5)
    assert cls is OrbitClass.INADMISSIBLE and resid > 0.1


def test_class_distance_and_errors():
    assert class_distance((0, 1), OrbitClass.OMEGA01, 0.5) == 0
    with pytest.raises(ValueError):
        step((0, 0), 3, "fwd", 0.5)
    with pytest.raises(ValueError):
        match_spectrum([], 0.5)


def test_sweep_csv():
    rows = list(csv.reader(io.StringIO(sweep_csv([(0, 1), (0.046875, 0.9375)], 0.5))))
    assert rows[0] == ["x1", "x2", "class", "m", "n"]
    assert rows[2][2:] == ["Omega00", "1", "1"]
