"""Defining relations of the two algebras and their oriented rewrite rules."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .laurent import LaurentScalar
from .ncpoly import MAT2, SYM2, Gen, NCPoly, generators, star
from .parser import parse_expression


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: str
    rhs: str
    lead: str  # leading two-letter word that the rule rewrites

    def poly(self, algebra: str) -> NCPoly:
        return parse_expression(self.lhs, algebra) - parse_expression(self.rhs, algebra)


SYM2_RELATIONS = (
    Relation("z11.z21", "z11 z21", "q^2 z21 z11", "z11 z21"),
    Relation("z21.z22", "z21 z22", "q^2 z22 z21", "z21 z22"),
    Relation("[z11,z22]", "z11 z22 - z22 z11", "q (q^2 - q^-2) z21^2", "z11 z22"),
    Relation(
        "z11*.z11",
        "z11* z11",
        "q^4 z11 z11* - q (q^-1 - q) (1 + q^2)^2 z21 z21*"
        " + (q^-1 - q)^2 (1 + q^2) z22 z22* + 1 - q^4",
        "z11* z11",
    ),
    Relation(
        "z11*.z21",
        "z11* z21",
        "q^2 z21 z11* - q (q^-1 - q) (q^-1 + q) z22 z21*",
        "z11* z21",
    ),
    Relation("z11*.z22", "z11* z22", "z22 z11*", "z11* z22"),
    Relation("z21*.z22", "z21* z22", "q^2 z22 z21*", "z21* z22"),
    Relation("z21*.z21", "z21* z21", "q^2 z21 z21* - (1 - q^2) z22 z22* + (1 - q^2)", "z21* z21"),
    Relation("z22*.z22", "z22* z22", "q^4 z22 z22* + 1 - q^4", "z22* z22"),
)

MAT2_RELATIONS = (
    Relation("z1^1.z1^2", "z1^1 z1^2", "q z1^2 z1^1", "z1^1 z1^2"),
    Relation("z1^1.z2^1", "z1^1 z2^1", "q z2^1 z1^1", "z1^1 z2^1"),
    Relation("z1^2.z2^2", "z1^2 z2^2", "q z2^2 z1^2", "z1^2 z2^2"),
    Relation("z2^1.z2^2", "z2^1 z2^2", "q z2^2 z2^1", "z2^1 z2^2"),
    Relation("z1^2.z2^1", "z1^2 z2^1", "z2^1 z1^2", "z1^2 z2^1"),
    Relation("[z1^1,z2^2]", "z1^1 z2^2 - z2^2 z1^1", "(q - q^-1) z1^2 z2^1", "z1^1 z2^2"),
    Relation(
        "z1^1*.z1^1",
        "z1^1* z1^1",
        "q^2 z1^1 z1^1* - q^2 (q^-2 - 1) (z2^1 z2^1* + z1^2 z1^2*)"
        " + q^2 (q^-2 - 1)^2 z2^2 z2^2* + 1 - q^2",
        "z1^1* z1^1",
    ),
    # starred letter of the correction term carries the transposed index
    Relation("z1^1*.z1^2", "z1^1* z1^2", "q z1^2 z1^1* + (q - q^-1) z2^2 z2^1*", "z1^1* z1^2"),
    Relation("z1^1*.z2^1", "z1^1* z2^1", "q z2^1 z1^1* + (q - q^-1) z2^2 z1^2*", "z1^1* z2^1"),
    Relation("z1^1*.z2^2", "z1^1* z2^2", "z2^2 z1^1*", "z1^1* z2^2"),
    Relation("z1^2*.z1^2", "z1^2* z1^2", "q^2 z1^2 z1^2* - (1 - q^2) z2^2 z2^2* + 1 - q^2", "z1^2* z1^2"),
    Relation("z2^1*.z2^1", "z2^1* z2^1", "q^2 z2^1 z2^1* - (1 - q^2) z2^2 z2^2* + 1 - q^2", "z2^1* z2^1"),
    Relation("z2^1*.z1^2", "z2^1* z1^2", "z1^2 z2^1*", "z2^1* z1^2"),
    Relation("z2^2*.z1^2", "z2^2* z1^2", "q z1^2 z2^2*", "z2^2* z1^2"),
    Relation("z2^2*.z2^1", "z2^2* z2^1", "q z2^1 z2^2*", "z2^2* z2^1"),
    Relation("z2^2*.z2^2", "z2^2* z2^2", "q^2 z2^2 z2^2* + 1 - q^2", "z2^2* z2^2"),
)

# the untransposed form; its rewriting system is not confluent
MAT2_RELATIONS_AS_PRINTED = tuple(
    Relation(r.name, r.lhs, r.rhs.replace("z2^2 z2^1*", "z2^2 z1^2*"), r.lead)
    if r.name == "z1^1*.z1^2"
    else Relation(r.name, r.lhs, r.rhs.replace("z2^2 z1^2*", "z2^2 z2^1*"), r.lead)
    if r.name == "z1^1*.z2^1"
    else r
    for r in MAT2_RELATIONS
)

# unstarred letters in normal-form (ascending) order; starred letters follow mirrored
_UNSTARRED_ORDER = {
    SYM2: ((2, 2), (2, 1), (1, 1)),
    MAT2: ((2, 2), (2, 1), (1, 2), (1, 1)),
}


@dataclass
class Presentation:
    """Generators, letter precedence and oriented rewrite rules of one algebra.

    Normal words are exactly the words whose letter ranks never decrease:
    the unstarred block in the order ``z22, z21, z11`` (``sym``) followed by
    the mirrored starred block.
    """

    algebra: str
    relations: tuple[Relation, ...]
    rank: dict = field(default_factory=dict)
    rules: dict = field(default_factory=dict)
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        order = [Gen(self.algebra, i, j) for i, j in _UNSTARRED_ORDER[self.algebra]]
        letters = order + [g.star() for g in reversed(order)]
        self.rank = {g: r for r, g in enumerate(letters)}
        rules: dict = {}
        for rel in self.relations:
            lead = parse_expression(rel.lead, self.algebra)
            w, = lead.words()
            R = rel.poly(self.algebra)
            if R.coefficient(w) != LaurentScalar.const(1):
                raise ValueError(f"relation {rel.name}: leading word must have coefficient 1")
            rules[w] = NCPoly.word(self.algebra, w) - R
        for w, rhs in list(rules.items()):
            sw = tuple(g.star() for g in reversed(w))
            srhs = star(rhs)
            if sw in rules:
                if rules[sw] != srhs:
                    raise ValueError(f"rule for {sw} is not star-compatible")
            else:
                rules[sw] = srhs
        self.rules = rules
        self._validate()

    @property
    def letters(self) -> list[Gen]:
        return sorted(self.rank, key=self.rank.get)

    def key(self, w) -> tuple:
        """Graded-lexicographic sort key of a word."""
        return (len(w), tuple(self.rank[g] for g in w))

    def _validate(self) -> None:
        for a in self.rank:
            for b in self.rank:
                descending = self.rank[a] > self.rank[b]
                if descending != ((a, b) in self.rules):
                    raise ValueError(f"rule coverage broken at pair {a} {b}")
        for w, rhs in self.rules.items():
            for v in rhs.words():
                if self.key(v) >= self.key(w):
                    raise ValueError(f"rule {w} -> {v} does not decrease the order")

    def is_normal(self, w) -> bool:
        r = self.rank
        return all(r[w[k]] <= r[w[k + 1]] for k in range(len(w) - 1))

    def normal_words(self, degree: int, starred: bool = False) -> list[tuple]:
        """Normal words of exact length ``degree`` from one block, graded-lex order."""
        from itertools import combinations_with_replacement

        pool = [g for g in self.letters if g.starred == starred]
        return [tuple(c) for c in combinations_with_replacement(pool, degree)]

    def nf_word(self, w: tuple) -> dict:
        """Normal form of a single word, memoized (leftmost-insertion strategy)."""
        memo = self._memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        if self.is_normal(w):
            out = {w: LaurentScalar.const(1)}
        else:
            out = {}
            first = w[0]
            for u, c in self.nf_word(w[1:]).items():
                for v, d in self._insert(first, u).items():
                    acc = out.get(v)
                    val = c * d if acc is None else acc + c * d
                    out[v] = val
            out = {v: c for v, c in out.items() if not c.is_zero()}
        memo[w] = out
        return out

    def _insert(self, a: Gen, u: tuple) -> dict:
        if not u or self.rank[a] <= self.rank[u[0]]:
            return {(a,) + u: LaurentScalar.const(1)}
        out: dict = {}
        for v, c in self.rules[(a, u[0])].items():
            for x, d in self.nf_word(v + u[1:]).items():
                acc = out.get(x)
                out[x] = c * d if acc is None else acc + c * d
        return out


@lru_cache(maxsize=None)
def presentation(algebra: str) -> Presentation:
    """The shared presentation for ``'sym'`` or ``'mat2'``."""
    if algebra == SYM2:
        return Presentation(SYM2, SYM2_RELATIONS)
    if algebra == MAT2:
        return Presentation(MAT2, MAT2_RELATIONS)
    raise ValueError(f"unknown algebra {algebra!r}")


def relations(algebra: str) -> tuple[Relation, ...]:
    return presentation(algebra).relations


def relation_polys(algebra: str) -> list[tuple[str, NCPoly]]:
    return [(r.name, r.poly(algebra)) for r in relations(algebra)]


__all__ = [
    "Relation",
    "Presentation",
    "presentation",
    "relations",
    "relation_polys",
    "SYM2_RELATIONS",
    "MAT2_RELATIONS",
    "MAT2_RELATIONS_AS_PRINTED",
    "generators",
]
