import math

import numpy as np
import pytest

from qmatreps.algebra import MAT2, SYM2, gram_matrix
from qmatreps.algebra.fock import evaluate_matrix
from qmatreps.analysis import (cyclic_compress, cyclic_span, equivalence_report, fingerprint, interior_identity_defect,
                               joint_kernel, kernel_eigen_split, null_cyclic_vectors, omega00_oscillator_check,
                               omega00_transport, omega01_oscillator_check, omega10_diagonal_check, vacuum_gram)
from qmatreps.catalog import build_simplest, build_sym_series
from qmatreps.coaction import coact_mat2, coact_sym, torus_twist
from qmatreps.hilbert import relation_residual_suite

Q = 0.5


def test_pi5_vacuum_is_the_unique_null_vector():
    p5 = build_sym_series("pi5", (), Q, (6, 6, 6))
    vs = null_cyclic_vectors(p5)
    assert len(vs) == 1 and abs(vs[0][0]) == pytest.approx(1.0)


def test_cyclic_span_counts_fock_words():
    p5 = build_sym_series("pi5", (), Q, (8, 8, 8))
    v = np.zeros(p5.size)
    v[0] = 1
    assert [cyclic_span(p5, v, d).vectors.shape[1] for d in range(4)] == [1, 4, 10, 20]


def test_vacuum_gram_matches_exact_gram():
    p5 = build_sym_series("pi5", (), Q, (8, 8, 8))
    v = np.zeros(p5.size)
    v[0] = 1
    exact = np.array(evaluate_matrix(gram_matrix(2, SYM2), Q))
    assert np.abs(vacuum_gram(p5, v, 2) - exact).max() < 1e-13


def test_compression_of_fock_subrep_in_mat2_composite():
    r = coact_mat2(build_simplest(MAT2, "calF2", Q, 4), "pi", "eps", 8)
    vs = null_cyclic_vectors(r, max_level=1)
    assert vs
    c = cyclic_compress(r, vs[0], 2)
    assert c.params["leakage"] < 1e-12
    assert max(x for _, x in relation_residual_suite(c)) < 1e-12


def test_fingerprint_orbit_and_phases():
    fp = fingerprint(build_sym_series("pi3", (0.7,), Q, 14))
    assert fp.orbit == "Omega10"
    names = dict(fp.phases)
    assert any(abs(math.remainder(a - 0.7, 2 * math.pi)) < 1e-8 for a in names["z21"])
    assert fingerprint(build_sym_series("pi4", (0.1,), Q, (10, 10))).orbit == "Omega00"


def test_fingerprint_rejects_non_representations():
    with pytest.raises(ValueError):
        fingerprint(build_sym_series("pi1", (0.0, 0.0), Q, (), literal=True))


def test_equivalence_positive_and_negative():
    a = coact_sym(build_simplest(SYM2, "calF1", Q, 10), "eps", 10)
    assert equivalence_report(a, build_sym_series("pi2", (0.0,), Q, 10)).equivalent
    assert not equivalence_report(a, build_sym_series("pi2", (1.0,), Q, 10)).equivalent
    assert not equivalence_report(build_sym_series("pi5", (), Q, (6, 6, 6)),
                                  build_sym_series("pi4", (0.0,), Q, (10, 10))).equivalent


def test_truncation_stability_of_equivalence():
    rep = equivalence_report(build_sym_series("pi3", (0.4,), Q, 12), build_sym_series("pi3", (0.4,), Q, 16))
    assert rep.equivalent


def test_F0_pi_kernel_split():
    r = coact_sym(build_simplest(SYM2, "calF0", Q), "pi", 16)
    pieces = kernel_eigen_split(r, "z22", "z21")
    assert sorted(round(lam.imag) for lam, _, _ in pieces) == [-1, 1]
    assert all(abs(lam.real) < 1e-12 and leak < 1e-12 for lam, _, leak in pieces)


def test_decomposition_checks():
    p4 = build_sym_series("pi4", (0.2,), Q, (10, 10))
    assert all(w < 1e-12 and n > 0 for w, n in omega00_transport(p4).values())
    assert omega00_oscillator_check(p4) < 1e-12
    diag, off = omega10_diagonal_check(build_sym_series("pi3", (0.2,), Q, 12))
    assert diag < 1e-12 and off < 1e-10
    assert omega01_oscillator_check(build_sym_series("pi2", (0.2,), Q, 12)) < 1e-12


def test_case7_identity_and_kernel():
    r = coact_mat2(build_simplest(MAT2, "calF0", Q), "pi", "pi", 8)
    assert interior_identity_defect(r, "z2^1*", "z1^2", sign=-1.0) < 1e-12
    assert joint_kernel(r, ("z2^2*",)).shape[1] > 0


def test_twisted_composite_matches_twisted_series():
    a = torus_twist(coact_sym(build_simplest(SYM2, "calF0", Q), "eps", 1), (0.2, 0.35))
    b = build_sym_series("pi1", (0.7, 0.4), Q, ())
    assert equivalence_report(a, b).equivalent
