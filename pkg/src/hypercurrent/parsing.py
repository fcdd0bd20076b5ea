"""Recursive-descent parser for the small expression language used throughout.

Grammar (ASCII, whitespace insensitive)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := power (('*'|'/') power)*
    power   := atom (('^'|'**') ['-'|'+'] INT)?
    atom    := INT | IDENT | '(' expr ')'

``t`` and ``u`` are reserved; every other identifier is a parameter.  The
parser evaluates directly into a :class:`Monomials` map, a sparse dictionary
``(t_exp, u_exp, params) -> Fraction`` where ``params`` is a sorted tuple of
``(name, exponent)`` pairs.  Negative exponents are allowed on ``t`` only.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["ParseError", "Monomials", "parse_expression", "RESERVED"]

RESERVED = frozenset({"t", "u"})

Key = tuple  # (t_exp, u_exp, ((name, exp), ...))
Monomials = dict  # Key -> Fraction


class ParseError(ValueError):
    """Syntax error carrying the offending text and a caret position."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(self.render())

    def render(self) -> str:
        if not self.text:
            return self.message
        return f"{self.message}\n  {self.text}\n  {' ' * self.pos}^"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = "int" if m.group(1) else "ident" if m.group(2) else "op"
        value = m.group(1) or m.group(2) or m.group(3)
        tokens.append((kind, value, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, e in b:
        d[name] = d.get(name, 0) + e
    return tuple(sorted((k, v) for k, v in d.items() if v))


def _add(x: Monomials, y: Monomials, sign: int = 1) -> Monomials:
    out = dict(x)
    for k, c in y.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _mul(x: Monomials, y: Monomials) -> Monomials:
    out: Monomials = {}
    for (ta, ua, pa), ca in x.items():
        for (tb, ub, pb), cb in y.items():
            k = (ta + tb, ua + ub, _merge(pa, pb))
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _const(c) -> Monomials:
    c = Fraction(c)
    return {(0, 0, ()): c} if c else {}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self) -> Monomials:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self) -> Monomials:
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = {k: -c for k, c in value.items()}
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            value = _add(value, self.term(), 1 if op == "+" else -1)
        return value

    def term(self) -> Monomials:
        value = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            tok = self.peek()
            rhs = self.power()
            if op == "*":
                value = _mul(value, rhs)
            else:
                value = _mul(value, self._invert(rhs, tok))
        return value

    def _invert(self, x: Monomials, tok) -> Monomials:
        if len(x) != 1:
            self.fail("can only divide by a rational constant or a power of t", tok)
        ((t, u, params), c), = x.items()
        if u or params:
            self.fail("can only divide by a rational constant or a power of t", tok)
        return {(-t, 0, ()): 1 / c}

    def power(self) -> Monomials:
        base_tok = self.peek()
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.take()
            if tok[0] != "int":
                self.fail("expected an integer exponent", tok)
            exp = sign * int(tok[1])
            if exp < 0:
                base = self._invert(base, base_tok)
                exp = -exp
            result = _const(1)
            for _ in range(exp):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> Monomials:
        tok = self.take()
        kind, value, _ = tok
        if kind == "int":
            return _const(int(value))
        if kind == "ident":
            if value == "t":
                return {(1, 0, ()): Fraction(1)}
            if value == "u":
                return {(0, 1, ()): Fraction(1)}
            return {(0, 0, ((value, 1),)): Fraction(1)}
        if value == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected token {value!r}", tok)


def parse_expression(text: str) -> Monomials:
    """Parse ``text`` into a sparse monomial map.

    >>> parse_expression("2*b*t^-1 + u")
    {(-1, 0, (('b', 1),)): Fraction(2, 1), (0, 1, ()): Fraction(1, 1)}
    """
    return _Parser(text).parse()
