"""Numeric Fock representation compressed from the exact Fock module."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import scipy.linalg as la

from .algebra.fock import FockVector, fock_act, fock_basis, gram_matrix
from .algebra.ncpoly import generators
from .algebra.presentations import presentation
from .hilbert.rep import RepInstance
from .hilbert.truncop import Basis, TruncOp


@lru_cache(maxsize=None)
def _symbolic_action(algebra: str, degree: int):
    pres = presentation(algebra)
    basis = fock_basis(degree, pres)
    index = {w: i for i, w in enumerate(basis)}
    action = {}
    for g in generators(algebra):
        cols = []
        for j, w in enumerate(basis):
            out = fock_act(g, FockVector.from_word(algebra, w), pres)
            cols.append([(index[v], c) for v, c in out.terms.items() if v in index])
        action[g] = cols
    return basis, action


def fock_rep(algebra: str, q: float, degree: int) -> RepInstance:
    """Fock representation on words of degree <= ``degree``, orthonormalized.

    Basis vectors are Gram-Schmidt (Cholesky) combinations of the normal
    words ``w.v`` in graded-lex order, so vector ``i`` lies in the span of
    words ``0..i`` and has level = its degree.
    """
    basis_words, action = _symbolic_action(algebra, degree)
    n = len(basis_words)
    G = np.array([[float(c.evaluate(q)) for c in row] for row in gram_matrix(degree, algebra)])
    L = la.cholesky(G, lower=True)
    levels = np.array([len(w) for w in basis_words])
    space = Basis.graded(levels, (degree + 1,))
    gens = {}
    for g, cols in action.items():
        M = np.zeros((n, n))
        for j, entries in enumerate(cols):
            for i, c in entries:
                M[i, j] = float(c.evaluate(q))
        # A_E = L^H M L^{-H}
        A = L.T @ la.solve_triangular(L, M.T, lower=True).T
        A[np.abs(A) < 1e-15 * max(1.0, np.abs(A).max())] = 0.0
        gens[g] = TruncOp(space, A.astype(np.complex128), 1)
    return RepInstance(algebra, q, gens, {"degree": degree}, f"{algebra}:fock(deg<={degree})")


def fock_word_labels(algebra: str, degree: int) -> list[tuple]:
    return list(_symbolic_action(algebra, degree)[0])
