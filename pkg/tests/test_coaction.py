import numpy as np
import pytest

from qmatreps.algebra import MAT2, SYM2
from qmatreps.catalog import build_simplest, build_sym_series
from qmatreps.coaction import CompositeSpec, coact_mat2, coact_sym, diagonal_gauge, torus_twist
from qmatreps.hilbert import relation_residual_suite


def worst(rep):
    return max(r for _, r in relation_residual_suite(rep))


@pytest.mark.parametrize("base", ["calF0", "calF1"])
@pytest.mark.parametrize("leg", ["pi", "eps"])
def test_sym_composites_are_representations(base, leg):
    rep = coact_sym(build_simplest(SYM2, base, 0.5, 8), leg, 8)
    assert worst(rep) < 1e-10


@pytest.mark.parametrize("base", ["calF0", "calF1"])
@pytest.mark.parametrize("legs", [("pi", "pi"), ("pi", "eps"), ("eps", "eps")])
def test_mat2_composites_are_representations(base, legs):
    rep = coact_mat2(build_simplest(MAT2, base, 0.5, 6), *legs, 6)
    assert worst(rep) < 1e-10


def test_counit_legs_are_trivial():
    base = build_simplest(SYM2, "calF1", 0.5, 8)
    rep = coact_sym(base, "eps", 8)
    for g in base.gens:
        assert np.array_equal(rep.gens[g].dense(), base.gens[g].dense())


def test_displayed_action_of_F0_eps():
    # derived: F0 sends z11 to q^-1 and z22 to 1, z21 to 0
    rep = coact_sym(build_simplest(SYM2, "calF0", 0.5), "eps", 1)
    assert rep["z11"].dense()[0, 0] == 2.0 and rep["z22"].dense()[0, 0] == 1.0
    assert rep["z21"].dense()[0, 0] == 0.0


def test_twists_preserve_relations_and_phases():
    rep = build_sym_series("pi4", (0.0,), 0.5, (10, 10))
    tw = torus_twist(rep, (0.3, -0.2))
    assert worst(tw) < 1e-12
    ratio = tw["z21"].dense()[rep["z21"].dense() != 0] / rep["z21"].dense()[rep["z21"].dense() != 0]
    assert np.allclose(ratio, np.exp(0.1j))
    m = torus_twist(build_simplest(MAT2, "calF1", 0.5, 8), (0.1, 0.2, 0.3, 0.4))
    assert worst(m) < 1e-12
    with pytest.raises(ValueError):
        torus_twist(rep, (0.1,))


def test_gauge_is_unitary_conjugation():
    rep = build_sym_series("pi3", (0.3,), 0.5, 10)
    g = diagonal_gauge(rep, np.linspace(0, 1, 10))
    assert worst(g) < 1e-12


def test_composite_spec_round_trip():
    spec = CompositeSpec("mat2", "calF1", ["pi", "eps"], 0.5, dims=6, angles=[0.0, 0.1, 0.2, 0.3])
    again = CompositeSpec.from_json(spec.to_json())
    assert again == spec
    assert worst(again.build()) < 1e-10
    with pytest.raises(ValueError):
        CompositeSpec("sym", "calF1", ["pi", "pi"], 0.5)
