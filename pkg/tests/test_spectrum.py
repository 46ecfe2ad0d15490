import numpy as np
import pytest

from qmatreps.catalog import build_simplest, build_sym_series
from qmatreps.coaction import coact_sym
from qmatreps.hilbert import commutant_dimension, direct_sum, joint_spectrum
from qmatreps.hilbert.spectrum import diagonal_family, family_interior, joint_eigencells, merge_pairs


def test_joint_eigencells_of_commuting_diagonals():
    a = np.diag([1.0, 1.0, 2.0, 3.0])
    b = np.diag([0.0, 1.0, 1.0, 1.0])
    cells = joint_eigencells([a, b])
    assert sorted(v for v, _ in cells) == [(1.0, 0.0), (1.0, 1.0), (2.0, 1.0), (3.0, 1.0)]


def test_noncommuting_input_rejected():
    a = np.array([[1.0, 0], [0, 2.0]])
    b = np.array([[0, 1.0], [1.0, 0]])
    with pytest.raises(ValueError):
        joint_eigencells([a, b])


def test_pi3_spectrum_on_Omega10_lattice():
    q = 0.5
    rep = build_sym_series("pi3", (0.2,), q, 12)
    _, (A, B) = diagonal_family(rep)
    pairs = joint_spectrum(A, B, tol=1e-12, interior=family_interior(rep))
    assert len(pairs) == 10
    for n, (x1, x2) in enumerate(sorted(pairs, key=lambda p: -p[0])):
        assert x1 == pytest.approx(q ** (4 * n), abs=1e-12)
        assert x2 == pytest.approx(1 - q ** (4 * n), abs=1e-12)


def test_merge_pairs():
    assert merge_pairs([(0.1, 0.2), (0.1 + 1e-13, 0.2)], 1e-12) == [(0.1, 0.2), (0.1, 0.2)]


@pytest.mark.parametrize("rep,expected", [
    (build_sym_series("pi4", (0.3,), 0.5, (10, 10)), 1),
    (build_sym_series("pi3", (0.3,), 0.5, 16), 1),
    (direct_sum(build_sym_series("pi1", (0.2, 0.1), 0.5, ()), build_sym_series("pi1", (0.2, 0.1), 0.5, ())), 4),
    (direct_sum(build_sym_series("pi1", (0.2, 0.1), 0.5, ()), build_sym_series("pi1", (0.9, 0.1), 0.5, ())), 2),
    (coact_sym(build_simplest("sym", "calF0", 0.5), "pi", 14), 2),
])
def test_commutant_dimension(rep, expected):
    res = commutant_dimension(rep)
    assert res.dimension == expected
    assert res.gap > 1e6
