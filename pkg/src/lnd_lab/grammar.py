"""Recursive-descent parser for the polynomial text grammar.

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ['^' int]
    base     := rational | ident | '(' expr ')'
    rational := int ['/' posint]
    ident    := letter (letter | digit | '_')*

Whitespace is insignificant and there is no implicit multiplication.  A
negative exponent is only accepted directly on an invertible variable.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    ExponentOverflowError,
    NegativePowerOfNonInvertibleError,
    PolySyntaxError,
    UnknownVariableError,
)
from .poly import EXPONENT_LIMIT, Polynomial, RingDesc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", m.start(3), "an operator, number or identifier")
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingDesc):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, expected):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"found {found}", tok[2], expected)
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[0] == "-":
            self.i += 1
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0], "'+' or '-'")[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.i += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        start = self.peek()
        base, var = self.base()
        if self.peek()[0] != "^":
            return base
        self.i += 1
        sign = 1
        if self.peek()[0] == "-":
            self.i += 1
            sign = -1
        tok = self.take("int", "an integer exponent")
        e = sign * int(tok[1])
        if abs(e) >= EXPONENT_LIMIT:
            raise ExponentOverflowError(f"exponent {e} at position {tok[2]} exceeds the bound 2^31")
        if e < 0 and (var is None or var not in self.ring.invertible):
            what = f"variable {var!r}" if var else "a non-variable base"
            raise NegativePowerOfNonInvertibleError(
                f"negative exponent on {what} at position {start[2]}"
            )
        return base**e

    def base(self):
        tok = self.peek()
        if tok[0] == "int":
            self.i += 1
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.i += 1
                den = self.take("int", "a positive integer denominator")
                if int(den[1]) == 0:
                    raise PolySyntaxError("zero denominator", den[2], "a positive integer denominator")
                value /= int(den[1])
            return self.ring.const(value), None
        if tok[0] == "ident":
            self.i += 1
            if tok[1] not in self.ring.variables:
                raise UnknownVariableError(tok[1], self.ring.variables)
            return self.ring.var(tok[1]), tok[1]
        if tok[0] == "(":
            self.i += 1
            inner = self.expr()
            self.take(")", "')'")
            return inner, None
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise PolySyntaxError(f"found {found}", tok[2], "a number, identifier or '('")


def parse_poly(text: str, ring: RingDesc) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    p = _Parser(text, ring)
    result = p.expr()
    p.take("end", "end of input or an operator")
    return result
