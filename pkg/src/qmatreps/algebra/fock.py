"""The Fock module: vacuum ``v`` killed by every starred generator."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .laurent import LaurentScalar
from .ncpoly import Gen, NCPoly
from .presentations import Presentation, presentation
from .rewriting import normal_form


class FockVector:
    """Finite combination ``sum c_w w.v`` over normal unstarred words ``w``."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: str, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}
        if any(g.starred for w in self.terms for g in w):
            raise ValueError("Fock vectors carry unstarred words only")

    @classmethod
    def vacuum(cls, algebra: str) -> "FockVector":
        return cls(algebra, {(): LaurentScalar.const(1)})

    @classmethod
    def from_word(cls, algebra: str, w: tuple) -> "FockVector":
        return cls(algebra, {tuple(w): LaurentScalar.const(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"({c}) {' '.join(g.name for g in w) or '1'}" for w, c in self.terms.items())
        return f"FockVector({body or '0'})"


def _kill(nf: dict) -> dict:
    # normal words are unstarred-then-starred, so a starred last letter hits v
    return {w: c for w, c in nf.items() if not (w and w[-1].starred)}


def fock_act(g: Gen, vec: FockVector, pres: Presentation | None = None) -> FockVector:
    """Apply generator ``g`` to a Fock vector."""
    pres = pres or presentation(vec.algebra)
    acc: dict = {}
    for w, c in vec.terms.items():
        for v, d in _kill(pres.nf_word((g,) + w)).items():
            prev = acc.get(v)
            acc[v] = c * d if prev is None else prev + c * d
    return FockVector(vec.algebra, acc)


def vacuum_expectation(p: NCPoly, pres: Presentation | None = None) -> LaurentScalar:
    """``<v, p v>``: the unit coefficient of the normal form of ``p``."""
    return normal_form(p, pres).coefficient(())


def fock_basis(degree: int, pres: Presentation) -> list[tuple]:
    """Normal unstarred words of length <= ``degree`` in graded-lex order."""
    out = []
    for d in range(degree + 1):
        out.extend(pres.normal_words(d))
    return out


def _inner(pres: Presentation):
    """Memoized ``<u v, w v>`` for normal unstarred words via the module action."""

    @lru_cache(maxsize=None)
    def inner(u: tuple, w: tuple) -> LaurentScalar:
        if len(u) != len(w):
            # every relation preserves (#unstarred - #starred)
            return LaurentScalar()
        if not u:
            return LaurentScalar.const(1)
        # <x u' v, w v> = <u' v, x* w v>
        head, rest = u[0], u[1:]
        lowered = fock_act(head.star(), FockVector.from_word(pres.algebra, w), pres)
        total = LaurentScalar()
        for x, c in lowered.terms.items():
            total = total + c * inner(rest, x)
        return total

    return inner


_INNER_CACHE: dict = {}


def gram_matrix(degree: int, pres: Presentation | str) -> list[list[LaurentScalar]]:
    """Exact Gram matrix ``<w_i v, w_j v>`` on :func:`fock_basis`."""
    if isinstance(pres, str):
        pres = presentation(pres)
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    inner = _INNER_CACHE.setdefault(id(pres), _inner(pres))
    basis = fock_basis(degree, pres)
    return [[inner(u, w) for w in basis] for u in basis]


def gram_matrix_direct(degree: int, pres: Presentation | str) -> list[list[LaurentScalar]]:
    """Same matrix computed as ``phi(w_i* w_j)`` from full normal forms."""
    if isinstance(pres, str):
        pres = presentation(pres)
    basis = fock_basis(degree, pres)
    out = []
    for u in basis:
        row = []
        for w in basis:
            p = NCPoly.word(pres.algebra, tuple(g.star() for g in reversed(u)) + w)
            row.append(vacuum_expectation(p, pres))
        out.append(row)
    return out


def evaluate_matrix(m: list[list[LaurentScalar]], q):
    return [[c.evaluate(q) for c in row] for row in m]


def leading_pivots(m: list[list[Fraction]]) -> list[Fraction]:
    """Pivots of symmetric Gaussian elimination; ratios of leading minors."""
    a = [list(map(Fraction, row)) for row in m]
    n = len(a)
    pivots = []
    for k in range(n):
        p = a[k][k]
        pivots.append(p)
        if p == 0:
            break
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return pivots


def is_positive_definite_exact(m: list[list[Fraction]]) -> bool:
    """Sylvester's criterion with exact rational arithmetic."""
    piv = leading_pivots(m)
    return len(piv) == len(m) and all(p > 0 for p in piv)
