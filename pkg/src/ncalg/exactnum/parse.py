"""Expression parser for polynomial and algebra-element literals.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*       # "/" needs a numeric divisor
    factor := "-" factor | atom ("^" ["-"] INT)?
    atom   := NUMBER | NAME | "(" expr ")"

The parser produces a small tuple AST; :func:`evaluate` folds it with
caller-supplied handlers for names and numbers, so the same syntax serves
``3*x^2*y - 1/2`` and ``y + s*x`` inside an algebra.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

from .fields import FieldDesc
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9']*)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num, m.start(1)))
        elif name is not None:
            out.append(("name", name, m.start(2)))
        elif op is not None:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} at column {m.start(3) + 1} in {text!r}")
            out.append(("op", op, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ParseError(f"expected {want} at column {tok[2] + 1} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        node = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at column {self.peek()[2] + 1} in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.factor())
        return node

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return ("neg", self.factor())
        node = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            tok = self.take("num")
            if "." in tok[1]:
                raise ParseError(f"non-integer exponent at column {tok[2] + 1}")
            node = ("pow", node, sign * int(tok[1]))
        return node

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return ("num", Fraction(val))
        if kind == "name":
            self.take()
            return ("name", val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ParseError(f"unexpected token at column {pos + 1} in {self.text!r}")


def parse_expr(text: str):
    return _Parser(text).parse()


def _numeric(node):
    if node[0] == "num":
        return node[1]
    if node[0] == "neg":
        v = _numeric(node[1])
        return None if v is None else -v
    if node[0] == "div":
        a, b = _numeric(node[1]), _numeric(node[2])
        return None if a is None or b is None or b == 0 else a / b
    return None


def evaluate(node, name: Callable, number: Callable):
    """Fold an AST; ``name(str)`` and ``number(Fraction)`` build leaves."""
    tag = node[0]
    if tag == "num":
        return number(node[1])
    if tag == "name":
        return name(node[1])
    if tag == "neg":
        return -evaluate(node[1], name, number)
    if tag == "pow":
        return evaluate(node[1], name, number) ** node[2]
    if tag == "div":
        d = _numeric(node[2])
        if d is None:
            raise ParseError("division is only allowed by a numeric literal")
        if d == 0:
            raise ParseError("division by zero")
        return evaluate(node[1], name, number) * number(1 / d)
    left = evaluate(node[1], name, number)
    right = evaluate(node[2], name, number)
    if tag == "add":
        return left + right
    if tag == "sub":
        return left - right
    return left * right


def parse_poly(text: str, field: FieldDesc, vars=None, laurent=()) -> Poly:
    """Parse a polynomial literal such as ``3*x^2*y - 1/2`` or ``x^-1``.

    ``vars`` fixes the variable list (unknown names are rejected); by default
    variables are collected in order of appearance.  Negative exponents are
    accepted only on variables listed in ``laurent``.
    """
    node = parse_expr(text)
    laurent = frozenset(laurent)
    if vars is None:
        seen = []

        def collect(n):
            if n[0] == "name" and n[1] not in seen:
                seen.append(n[1])
            for child in n[1:]:
                if isinstance(child, tuple):
                    collect(child)
        collect(node)
        vars = seen
    vars = tuple(vars)
    lau = laurent & set(vars)

    def name(v):
        if v not in vars:
            raise ParseError(f"unknown variable {v!r} (ring variables: {', '.join(vars) or 'none'})")
        return Poly(field, vars, {tuple(1 if w == v else 0 for w in vars): 1}, lau)

    def number(q):
        return Poly.const(field, field(q), vars, lau)

    return evaluate(node, name, number)
