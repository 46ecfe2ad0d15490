import math

import numpy as np
import pytest
from hypothesis import given, settings

from qmatreps.algebra import MAT2, SYM2, normal_form
from qmatreps.catalog import build_simplest, build_su2_rep, build_sym_series
from qmatreps.hilbert import direct_sum, interior_residual, relation_residual_suite

from conftest import ncpoly

SERIES = [("pi1", (0.3, 1.1), ()), ("pi2", (0.7,), (12,)), ("pi3", (0.7,), (12,)),
          ("pi4", (0.7,), (10, 10)), ("pi5", (), (8, 8, 8))]


@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
@pytest.mark.parametrize("series,phases,dims", SERIES)
def test_series_satisfy_relations(series, phases, dims, q):
    rep = build_sym_series(series, phases, q, dims)
    assert max(r for _, r in relation_residual_suite(rep)) < 1e-12


def test_literal_pi1_residual_value():
    # derived by hand: |z11|^2 = 1 in the printed form, the relation asks for q^-2
    q = 0.5
    res = dict(relation_residual_suite(build_sym_series("pi1", (0.0, 0.0), q, (), literal=True)))
    assert res["z11*.z11"] == pytest.approx((1 / q - q) ** 2 * (1 + q * q), abs=1e-12)
    assert res["z11*.z11"] == pytest.approx(2.8125, abs=1e-12)


def test_literal_pi3_fails_only_off_zero_phase():
    lit0 = dict(relation_residual_suite(build_sym_series("pi3", (0.0,), 0.5, 12, literal=True)))
    lit = dict(relation_residual_suite(build_sym_series("pi3", (math.pi / 3,), 0.5, 12, literal=True)))
    assert lit0["[z11,z22]"] < 1e-12
    assert lit["[z11,z22]"] > 1e-3


def test_bad_arguments():
    with pytest.raises(ValueError):
        build_sym_series("pi3", (0.1,), 1.5, 12)
    with pytest.raises(ValueError):
        build_sym_series("pi6", (), 0.5, 4)
    with pytest.raises(ValueError):
        build_simplest(SYM2, "calF3", 0.5)


@pytest.mark.parametrize("algebra", [SYM2, MAT2])
@pytest.mark.parametrize("kind", ["calF0", "calF1", "calF2"])
def test_simplest_representations(algebra, kind):
    rep = build_simplest(algebra, kind, 0.5, 4 if (kind, algebra) == ("calF2", MAT2) else 8)
    assert max(r for _, r in relation_residual_suite(rep)) < 1e-12


def test_su2_counit():
    t = build_su2_rep("su2_eps", 0.5)
    assert [[t[i, j].dense()[0, 0] for j in (1, 2)] for i in (1, 2)] == [[1, 0], [0, 1]]


def test_su2_shift_unitarity():
    t = build_su2_rep("su2_pi", 0.5, 16)
    m = np.block([[t[1, 1].dense(), t[1, 2].dense()], [t[2, 1].dense(), t[2, 2].dense()]])
    n = t[1, 1].basis.size
    keep = np.r_[0:n - 2, n:2 * n - 2]
    u = m.conj().T @ m
    assert np.abs((u - np.eye(2 * n))[np.ix_(keep, keep)]).max() < 1e-12


def test_direct_sum_is_a_representation():
    a = build_sym_series("pi3", (0.2,), 0.5, 10)
    b = build_sym_series("pi2", (0.4,), 0.5, 10)
    s = direct_sum(a, b)
    assert s.size == 20
    assert max(r for _, r in relation_residual_suite(s)) < 1e-12


PI4 = build_sym_series("pi4", (0.4,), 0.5, (10, 10))


@settings(max_examples=40)
@given(ncpoly(SYM2, max_degree=3))
def test_numeric_soundness_of_normal_forms(p):
    # p - nf(p) lies in the relation ideal, so it vanishes in every representation
    assert interior_residual(p - normal_form(p), PI4) < 1e-10
