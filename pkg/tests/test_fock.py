from fractions import Fraction

import numpy as np
import pytest

from qmatreps.algebra import MAT2, SYM2, FockVector, gen, gram_matrix, gram_matrix_direct
from qmatreps.algebra.fock import evaluate_matrix, fock_act, is_positive_definite_exact, leading_pivots
from qmatreps.fock_numeric import fock_rep
from qmatreps.hilbert.rep import relation_residual_suite


@pytest.mark.parametrize("algebra,sizes", [(SYM2, [1, 4, 10, 20]), (MAT2, [1, 5, 15, 35])])
def test_basis_sizes(algebra, sizes):
    assert [len(gram_matrix(d, algebra)) for d in range(4)] == sizes


@pytest.mark.parametrize("algebra", [SYM2, MAT2])
def test_module_action_and_direct_normal_form_agree(algebra):
    assert gram_matrix(2, algebra) == gram_matrix_direct(2, algebra)


@pytest.mark.parametrize("q", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
@pytest.mark.parametrize("algebra", [SYM2, MAT2])
def test_gram_positive_definite(algebra, q):
    for d in range(4):
        assert is_positive_definite_exact(evaluate_matrix(gram_matrix(d, algebra), q))


def test_degree_one_values_sym():
    # derived: <z v, z v> = 1 - q^4 for z11, z22 and 1 - q^2 for z21 (from the starred relations)
    g = evaluate_matrix(gram_matrix(1, SYM2), Fraction(1, 2))
    assert [g[i][i] for i in range(4)] == [1, Fraction(15, 16), Fraction(3, 4), Fraction(15, 16)]
    assert all(g[i][j] == 0 for i in range(4) for j in range(4) if i != j)


def test_gram_degenerates_at_q_one():
    piv = leading_pivots(evaluate_matrix(gram_matrix(1, SYM2), Fraction(1)))
    assert piv[1] == 0


def test_starred_letters_kill_vacuum():
    v = FockVector.vacuum(SYM2)
    for name in ("z11*", "z21*", "z22*"):
        assert fock_act(gen(SYM2, name), v).is_zero()


@pytest.mark.parametrize("algebra", [SYM2, MAT2])
def test_numeric_fock_rep_satisfies_relations_on_interior(algebra):
    rep = fock_rep(algebra, 0.5, 4)
    assert max(r for _, r in relation_residual_suite(rep)) < 1e-12


def test_numeric_fock_vacuum_norms():
    rep = fock_rep(SYM2, 0.5, 3)
    v = np.zeros(rep.size)
    v[0] = 1.0
    assert np.linalg.norm(rep["z21"].mat @ v) == pytest.approx(np.sqrt(0.75), abs=1e-14)
    assert np.linalg.norm(rep["z22*"].mat @ v) == 0
