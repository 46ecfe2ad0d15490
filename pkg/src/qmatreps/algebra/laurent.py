"""Exact Laurent polynomials in ``q`` with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


class LaurentScalar:
    """Finite sum ``sum_k c_k q**k`` with ``c_k`` rational and nonzero.

    Instances are immutable and hashable.  Arithmetic is exact.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | Iterable[tuple[int, Number]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for exp, coeff in items:
            c = acc.get(int(exp), Fraction(0)) + Fraction(coeff)
            acc[int(exp)] = c
        self._terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        self._hash = None

    @classmethod
    def const(cls, c: Number) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, c: Number = 1) -> "LaurentScalar":
        return cls({exp: c})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return self._terms[0][0]

    def max_exp(self) -> int:
        return self._terms[-1][0]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other) -> "LaurentScalar":
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, (int, Rational)):
            return LaurentScalar.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentScalar(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar((k, -v) for k, v in self._terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, Fraction] = {}
        for a, ca in self._terms:
            for b, cb in other._terms:
                acc[a + b] = acc.get(a + b, Fraction(0)) + ca * cb
        return LaurentScalar(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentScalar":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self._terms
            return LaurentScalar({k * n: Fraction(1) / c ** (-n)})
        out = LaurentScalar.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def evaluate(self, q):
        """Value at ``q``; exact for ``int``/``Fraction`` input, float otherwise."""
        if isinstance(q, (int, Fraction)):
            q = Fraction(q)
            return sum((c * q**k for k, c in self._terms), Fraction(0))
        return float(sum(float(c) * float(q) ** k for k, c in self._terms))

    def __repr__(self) -> str:
        return f"LaurentScalar({dict(self._terms)!r})"

    def __str__(self) -> str:
        return format_laurent(self)


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_qpow(k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "q"
    return f"q^{k}"


def format_laurent(x: LaurentScalar) -> str:
    """Render in the expression grammar, e.g. ``1 - q^4`` or ``-q^-1``."""
    if x.is_zero():
        return "0"
    parts = []
    for i, (k, c) in enumerate(x.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        qp = _format_qpow(k)
        if not qp:
            body = _format_rational(mag)
        elif mag == 1:
            body = qp
        else:
            body = f"{_format_rational(mag)} {qp}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


ZERO = LaurentScalar()
ONE = LaurentScalar.const(1)
Q = LaurentScalar.monomial(1)
