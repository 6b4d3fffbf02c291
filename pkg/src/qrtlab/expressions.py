"""Small recursive-descent parser for rational expressions.

Used by the catalogue loader and tests to write equations as readable
strings, e.g. "(Xp*Xc - A) * (Xm*Xc - A) - A^2*(1 - Xc)".  Produces a
RatFunc (MPoly available via `.num` when the denominator is 1).

Grammar:
  expr   := term (('+'|'-') term)*
  term   := factor (('*'|'/') factor)*
  factor := ('-'|'+')* power
  power  := atom ('^' signed_int)?
  atom   := INTEGER | NAME | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import LawSyntaxError
from .poly import MPoly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(s: str):
    pos = 0
    out = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos:].strip():
                raise LawSyntaxError(f"bad character at {s[pos:]!r}")
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise LawSyntaxError(f"expected {op!r}, got {val!r}")

    def expr(self) -> RatFunc:
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self) -> RatFunc:
        node = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            rhs = self.factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def factor(self) -> RatFunc:
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            _, op = self.take()
            if op == "-":
                sign = -sign
        node = self.power()
        return node if sign > 0 else -node

    def power(self) -> RatFunc:
        node = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "int":
                raise LawSyntaxError("exponent must be an integer")
            node = node ** (-val if neg else val)
        return node

    def atom(self) -> RatFunc:
        kind, val = self.take()
        if kind == "int":
            return RatFunc.const(Fraction(val))
        if kind == "name":
            return RatFunc.var(val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise LawSyntaxError(f"unexpected token {val!r}")


def parse_ratfunc(s: str) -> RatFunc:
    p = _Parser(tokenize(s))
    node = p.expr()
    if p.peek() != ("end", None):
        raise LawSyntaxError(f"trailing input near token {p.peek()!r}")
    return node


def parse_poly(s: str) -> MPoly:
    rf = parse_ratfunc(s)
    if not rf.den.is_const():
        raise LawSyntaxError("expression is not polynomial")
    return rf.num * (1 / rf.den.const_value())
