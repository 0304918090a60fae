"""Recursive-descent parser for bivariate polynomial expressions.

Grammar (whitespace ignored, no implicit multiplication)::

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' ['-'] int)?
    base   := int ['/' int] | 'x' | 'y' | '(' expr ')'

Error positions are 1-based character columns in the input text.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import ONE, X, Y, LaurentPoly
from .errors import NegativeExponent, PolySyntaxError


class _Parser:
    def __init__(self, text: str, laurent: bool):
        self.text = text
        self.pos = 0
        self.laurent = laurent

    def error(self, msg, pos=None):
        return PolySyntaxError(msg, (self.pos if pos is None else pos) + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected an integer, found {found!r}")
        return int(self.text[start:self.pos])

    def expr(self) -> LaurentPoly:
        if self.take("-"):
            acc = -self.term()
        else:
            self.take("+")
            acc = self.term()
        while True:
            if self.take("+"):
                acc = acc + self.term()
            elif self.take("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> LaurentPoly:
        acc = self.factor()
        while self.take("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> LaurentPoly:
        base = self.base()
        if not self.take("^"):
            return base
        self.skip()
        at = self.pos
        neg = self.take("-")
        n = self.integer()
        if neg:
            if not self.laurent:
                raise NegativeExponent("negative exponent outside Laurent mode", at + 1)
            if not base.is_monomial():
                raise self.error("negative powers apply only to monomials", at)
            return base ** (-n)
        return base ** n

    def base(self) -> LaurentPoly:
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            return X
        if ch == "y":
            self.pos += 1
            return Y
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if not self.take(")"):
                raise self.error("expected ')'")
            return inner
        if ch.isdigit():
            num = self.integer()
            if self.take("/"):
                at = self.pos
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator", at)
                return ONE.scale(Fraction(num, den))
            if self.peek() == ".":
                raise self.error("decimals are not accepted; use p/q")
            return ONE.scale(num)
        found = ch or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_poly(text: str, laurent: bool = False) -> LaurentPoly:
    """Parse ``text`` into a canonical LaurentPoly."""
    p = _Parser(text, laurent)
    out = p.expr()
    if p.peek():
        raise p.error(f"unexpected {p.peek()!r}")
    return out
