"""Generators and noncommutative polynomials of the free *-algebra."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, NamedTuple

from .laurent import ONE, LaurentScalar

SYM2 = "sym"
MAT2 = "mat2"
ALGEBRAS = (SYM2, MAT2)

_INDICES = {
    SYM2: ((1, 1), (2, 1), (2, 2)),
    MAT2: ((1, 1), (1, 2), (2, 1), (2, 2)),
}


class Gen(NamedTuple):
    """A generator letter.

    For ``sym`` the index is the matrix position ``z_{ij}``; for ``mat2``
    ``(i, j)`` denotes ``z_i^j`` (lower index first).
    """

    algebra: str
    i: int
    j: int
    starred: bool = False

    @property
    def name(self) -> str:
        base = f"z{self.i}{self.j}" if self.algebra == SYM2 else f"z{self.i}^{self.j}"
        return base + ("*" if self.starred else "")

    def star(self) -> "Gen":
        return self._replace(starred=not self.starred)

    def base(self) -> "Gen":
        return self._replace(starred=False)

    def __str__(self) -> str:
        return self.name


def generators(algebra: str) -> tuple[Gen, ...]:
    """Unstarred generators of ``algebra`` in catalog order."""
    try:
        return tuple(Gen(algebra, i, j) for i, j in _INDICES[algebra])
    except KeyError:
        raise ValueError(f"unknown algebra {algebra!r}") from None


def gen(algebra: str, name: str) -> Gen:
    """Look up a generator by its printed name, e.g. ``gen('sym', 'z21*')``."""
    starred = name.endswith("*")
    base = name.rstrip("*")
    for g in generators(algebra):
        if g.name == base:
            return g.star() if starred else g
    raise ValueError(f"unknown generator {name!r} for algebra {algebra!r}")


Word = tuple  # tuple[Gen, ...]


def star_word(w: Word) -> Word:
    return tuple(g.star() for g in reversed(w))


class NCPoly:
    """Formal sum of words with Laurent coefficients.

    Immutable; zero coefficients are never stored, the empty word is the unit.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: str, terms: Mapping[Word, LaurentScalar] | Iterable = ()):
        self.algebra = algebra
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, LaurentScalar] = {}
        for w, c in items:
            w = tuple(w)
            if not isinstance(c, LaurentScalar):
                c = LaurentScalar.const(c)
            prev = acc.get(w)
            acc[w] = c if prev is None else prev + c
        self._terms = {w: c for w, c in acc.items() if not c.is_zero()}
        for w in self._terms:
            for g in w:
                if g.algebra != algebra:
                    raise ValueError(f"letter {g} does not belong to algebra {algebra!r}")

    @classmethod
    def zero(cls, algebra: str) -> "NCPoly":
        return cls(algebra)

    @classmethod
    def scalar(cls, algebra: str, c) -> "NCPoly":
        return cls(algebra, {(): c})

    @classmethod
    def word(cls, algebra: str, w: Iterable[Gen], c=ONE) -> "NCPoly":
        return cls(algebra, {tuple(w): c})

    @classmethod
    def letter(cls, g: Gen) -> "NCPoly":
        return cls(g.algebra, {(g,): ONE})

    @property
    def terms(self) -> dict[Word, LaurentScalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, LaurentScalar]]:
        return iter(self._terms.items())

    def words(self):
        return self._terms.keys()

    def coefficient(self, w: Word) -> LaurentScalar:
        return self._terms.get(tuple(w), LaurentScalar())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def _check(self, other: "NCPoly") -> None:
        if other.algebra != self.algebra:
            raise ValueError("polynomials over different algebras")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, (int, LaurentScalar)):
            return NCPoly.scalar(self.algebra, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return NCPoly(self.algebra, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.algebra, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return NCPoly(self.algebra, {w: c * other for w, c in self._terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: list = []
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                out.append((w1 + w2, c1 * c2))
        return NCPoly(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise ValueError("negative powers of algebra elements are undefined")
        out = NCPoly.scalar(self.algebra, 1)
        for _ in range(n):
            out = out * self
        return out

    def star(self) -> "NCPoly":
        return star(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"NCPoly({self.algebra!r}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def star(p: NCPoly) -> NCPoly:
    """The involution: reverse every word and flip each letter's star.

    Coefficients are real Laurent polynomials and stay unchanged.
    """
    return NCPoly(p.algebra, {star_word(w): c for w, c in p.items()})


def format_word(w: Word) -> str:
    if not w:
        return ""
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = j - i
        parts.append(w[i].name if n == 1 else f"{w[i].name}^{n}")
        i = j
    return " ".join(parts)


def _sort_key(item):
    w, _ = item
    return (len(w), [(g.i, g.j, g.starred) for g in w])


def format_poly(p: NCPoly) -> str:
    """Render ``p`` in the parser grammar; ``parse_expression`` inverts it."""
    from .laurent import format_laurent

    if p.is_zero():
        return "0"
    out = []
    for k, (w, c) in enumerate(sorted(p.items(), key=_sort_key)):
        ws = format_word(w)
        if c.is_monomial():
            (e, r), = c.items()
            neg = r < 0
            mag = LaurentScalar.monomial(e, abs(r))
            cs = format_laurent(mag)
            if ws and cs == "1":
                body = ws
            elif ws:
                body = f"{cs} {ws}"
            else:
                body = cs
        else:
            neg = False
            body = f"({format_laurent(c)})" + (f" {ws}" if ws else "")
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
