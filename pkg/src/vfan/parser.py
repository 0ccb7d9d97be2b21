"""Recursive-descent parser for operator expressions.

Grammar (explicit multiplication only; noncommutative order preserved):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | atom ('^' nat)?
    atom    := rational | variable | '(' expr ')'
    variable:= x<i> | t<j> | dx<i> | dt<j> | z

Products are normal-ordered on the fly, so parse("dx1*x1") is already
the canonical operator.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .ring import DOp, RingSignature, gen_dt, gen_dx, gen_t, gen_x, gen_z, multiply, one

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>dx\d+|dt\d+|x\d+|t\d+|z)|(?P<op>[-+*^()/]))"
)


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num"):
            out.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    stripped = text[pos:].strip()
    if stripped:
        raise ParseError(f"trailing input {stripped!r}", pos)
    return out


class _Parser:
    def __init__(self, text: str, sig: RingSignature):
        self.text = text
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, symbol: str):
        kind, val, pos = self.next()
        if kind != "op" or val != symbol:
            raise ParseError(f"expected {symbol!r}", pos)

    def parse(self) -> DOp:
        result = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected token {val!r}", pos)
        return result

    def expr(self) -> DOp:
        acc = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> DOp:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                acc = multiply(acc, self.factor())
            else:
                return acc

    def factor(self) -> DOp:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            out = one(self.sig)
            for _ in range(int(val)):
                out = multiply(out, base)
            return out
        return base

    def atom(self) -> DOp:
        kind, val, pos = self.next()
        if kind == "num":
            num = int(val)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.next()
                k3, v3, p3 = self.next()
                if k3 != "num":
                    raise ParseError("denominator must be an integer", p3)
                return one(self.sig).scale(Fraction(num, int(v3)))
            return one(self.sig).scale(num)
        if kind == "name":
            return self.variable(val, pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)

    def variable(self, name: str, pos: int) -> DOp:
        sig = self.sig
        if name == "z":
            if not sig.homogenized:
                raise ParseError("z is only available with --ring dz", pos)
            return gen_z(sig)
        if name.startswith("dx"):
            kind, idx = gen_dx, int(name[2:])
            bound = sig.n
        elif name.startswith("dt"):
            kind, idx = gen_dt, int(name[2:])
            bound = sig.p
        elif name.startswith("x"):
            kind, idx = gen_x, int(name[1:])
            bound = sig.n
        else:
            kind, idx = gen_t, int(name[1:])
            bound = sig.p
        if not 1 <= idx <= bound:
            raise ParseError(f"variable {name!r} is outside the signature (n={sig.n}, p={sig.p})", pos)
        return kind(sig, idx - 1)


def parse_operator(text: str, sig: RingSignature) -> DOp:
    """Parse and normal-order an operator expression for the signature."""
    return _Parser(text, sig).parse()
