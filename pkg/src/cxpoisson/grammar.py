"""Text grammar for polynomial coefficients.

Accepted tokens: integers, rationals `p/q`, the imaginary unit `i`, chart
variable names, `+ - * ^` and parentheses.  Whitespace is ignored.  `^` takes
a nonnegative integer exponent.  Multiplication is always explicit (`2*x*y`).

The printer in poly.format_poly emits strings this parser accepts, so
parse/print round-trips.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .poly import Chart, Poly
from .scalars import GS_I, GaussScalar

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


class PolyParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"at column {pos + 1}: {msg} in {text!r}")
        self.pos = pos


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise PolyParseError(text, pos, f"unexpected character {text[pos]!r}")
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise PolyParseError(self.text, len(self.text), "unexpected end of input")
        self.k += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise PolyParseError(self.text, tok[2], f"expected {op!r}, got {tok[1]!r}")

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise PolyParseError(self.text, tok[2], f"trailing token {tok[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.factor()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.take()
            if etok[0] != "num":
                raise PolyParseError(self.text, etok[2], "exponent must be an integer")
            p = Poly.const(self.chart, 1)
            for _ in range(int(etok[1])):
                p = p * base
            return p
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok[0] == "num":
            value = Fraction(int(tok[1]))
            nxt = self.peek()
            # rational literal p/q
            if nxt and nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    raise PolyParseError(self.text, den[2], "denominator must be an integer")
                value /= int(den[1])
            return Poly.const(self.chart, GaussScalar.of(value))
        if tok[0] == "name":
            if tok[1] == "i":
                if "i" in self.chart.vars:
                    # a chart variable named i shadows the imaginary unit
                    return Poly.var(self.chart, "i")
                return Poly.const(self.chart, GS_I)
            try:
                return Poly.var(self.chart, tok[1])
            except KeyError:
                raise PolyParseError(
                    self.text, tok[2], f"unknown variable {tok[1]!r}"
                ) from None
        if tok[1] == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise PolyParseError(self.text, tok[2], f"unexpected token {tok[1]!r}")


def parse_poly(text: str, chart: Chart) -> Poly:
    """Parse a polynomial string on the given chart."""
    return _Parser(text, chart).parse()
