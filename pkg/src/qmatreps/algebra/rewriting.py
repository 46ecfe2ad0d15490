"""Normal-form rewriting and identity checking."""

from __future__ import annotations

import random

from .laurent import LaurentScalar
from .ncpoly import NCPoly, star
from .presentations import Presentation, presentation


def _pres(p: NCPoly, pres: Presentation | None) -> Presentation:
    pres = pres or presentation(p.algebra)
    if pres.algebra != p.algebra:
        raise ValueError("polynomial and presentation belong to different algebras")
    return pres


def normal_form(p: NCPoly, pres: Presentation | None = None, rng: random.Random | None = None) -> NCPoly:
    """Rewrite ``p`` until no rule applies.

    With ``rng`` the redex to rewrite is chosen at random at every step and
    nothing is memoized; this is the independent strategy used to test
    confluence.
    """
    pres = _pres(p, pres)
    if rng is not None:
        return _random_strategy(p, pres, rng)
    acc: dict = {}
    for w, c in p.items():
        for v, d in pres.nf_word(w).items():
            prev = acc.get(v)
            acc[v] = c * d if prev is None else prev + c * d
    return NCPoly(p.algebra, acc)


def _random_strategy(p: NCPoly, pres: Presentation, rng: random.Random) -> NCPoly:
    terms = dict(p.items())
    rank = pres.rank
    while True:
        dirty = [w for w in terms if not pres.is_normal(w)]
        if not dirty:
            return NCPoly(p.algebra, terms)
        w = dirty[rng.randrange(len(dirty))]
        spots = [k for k in range(len(w) - 1) if rank[w[k]] > rank[w[k + 1]]]
        k = spots[rng.randrange(len(spots))]
        c = terms.pop(w)
        for v, d in pres.rules[(w[k], w[k + 1])].items():
            x = w[:k] + v + w[k + 2:]
            terms[x] = terms.get(x, LaurentScalar()) + c * d
            if terms[x].is_zero():
                del terms[x]


def check_identity(lhs: NCPoly, rhs: NCPoly, pres: Presentation | None = None) -> bool:
    """True iff ``lhs - rhs`` rewrites to zero (exact)."""
    if lhs.algebra != rhs.algebra:
        raise ValueError("identity sides belong to different algebras")
    return normal_form(lhs - rhs, pres).is_zero()


star_involution = star
