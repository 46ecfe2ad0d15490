"""Parser for the expression grammar.

Grammar (whitespace is insignificant)::

    expr    := [+|-] term ((+|-) term)*
    term    := factor ([.] factor)*          juxtaposition multiplies
    factor  := atom (* | ^[-]INT)*            postfix star and powers
    atom    := INT[/INT] | q | generator | ( expr )

Generators are ``z11 z21 z22`` (and the shorthand ``z12 = q z21``) for the
symmetric algebra and ``z1^1 z1^2 z2^1 z2^2`` for ``mat2``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .laurent import LaurentScalar
from .ncpoly import MAT2, SYM2, Gen, NCPoly, star


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<mgen>z[0-9]\^[0-9])|"
    r"(?P<gen>z\d\d(?!\d)|z\w*)|"
    r"(?P<num>\d+)|"
    r"(?P<q>q)|"
    r"(?P<op>[-+*^/().])"
    r")"
)


def _tokenize(text: str, algebra: str):
    pos = 0
    toks = []
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", pos, text)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "mgen" and algebra != MAT2:
            # in the symmetric algebra "z2^1" never names a letter
            kind, val = "gen", val.split("^")[0]
            m_end = start + len(val)
            toks.append((kind, val, start))
            pos = m_end
            continue
        toks.append((kind, val, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, algebra: str):
        if algebra not in (SYM2, MAT2):
            raise ValueError(f"unknown algebra {algebra!r}")
        self.text = text
        self.algebra = algebra
        self.toks = _tokenize(text, algebra)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self) -> NCPoly:
        out = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return out

    def expr(self) -> NCPoly:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term() * sign
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("num", "q", "gen", "mgen") or (tok[0] == "op" and tok[1] == "(")

    def term(self) -> NCPoly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == ".":
                self.take()
                acc = acc * self.factor()
            elif self._starts_factor(tok):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> NCPoly:
        val = self.atom()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                val = star(val)
            elif tok[0] == "op" and tok[1] == "^":
                self.take()
                neg = False
                t = self.peek()
                if t[0] == "op" and t[1] == "-":
                    self.take()
                    neg = True
                t = self.take()
                if t[0] != "num":
                    self.error("expected integer exponent", t)
                n = int(t[1])
                if neg:
                    val = self._invert(val, t) ** n
                else:
                    val = val ** n
            else:
                return val

    def _invert(self, val: NCPoly, tok) -> NCPoly:
        items = list(val.items())
        if len(items) == 1 and items[0][0] == () and items[0][1].is_monomial():
            return NCPoly.scalar(self.algebra, items[0][1] ** -1)
        self.error("negative power of a non-monomial", tok)

    def atom(self) -> NCPoly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            num = Fraction(int(val))
            t = self.peek()
            if t[0] == "op" and t[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or int(d[1]) == 0:
                    self.error("expected nonzero integer denominator", d)
                num = num / int(d[1])
            return NCPoly.scalar(self.algebra, LaurentScalar.const(num))
        if kind == "q":
            return NCPoly.scalar(self.algebra, LaurentScalar.monomial(1))
        if kind in ("gen", "mgen"):
            return self._generator(val, tok)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.error("unexpected token", tok)

    def _generator(self, name: str, tok) -> NCPoly:
        if self.algebra == SYM2:
            table = {"z11": (1, 1), "z21": (2, 1), "z22": (2, 2)}
            if name == "z12":
                return NCPoly.word(SYM2, (Gen(SYM2, 2, 1),), LaurentScalar.monomial(1))
            if name in table:
                return NCPoly.letter(Gen(SYM2, *table[name]))
        else:
            m = re.fullmatch(r"z([12])\^([12])", name)
            if m:
                return NCPoly.letter(Gen(MAT2, int(m.group(1)), int(m.group(2))))
        self.error(f"unknown generator {name!r} for algebra {self.algebra!r}", tok)


def parse_expression(text: str, algebra: str) -> NCPoly:
    """Parse ``text`` into an exact :class:`NCPoly` over ``algebra``."""
    return _Parser(text, algebra).parse()


def parse_scalar(text: str) -> LaurentScalar:
    """Parse a pure Laurent expression such as ``q^4 (1-q^2)``."""
    p = parse_expression(text, SYM2)
    words = list(p.words())
    if any(w for w in words):
        raise ValueError(f"expected a scalar expression, got {text!r}")
    return p.coefficient(())
