"""Parser for operator and polynomial expressions.

Grammar (``^`` binds tighter than ``*`` and ``/``, which bind tighter than
``+`` and ``-``; products are noncommutative and read left to right)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)*
    atom   := INT | 'x' | 'D' | 'i' | NAME | '(' expr ')'

``D`` is the derivation, ``i`` the imaginary unit and any other name a
commuting parameter.  A quotient needs a divisor free of ``D``; for
operators it scales on the left, so ``D/x`` is ``(1/x)*D``.
"""

from __future__ import annotations

import re

from .errors import NonIntegerExponent, OperatorSyntaxError
from .exactalg import GaussRat, MPoly
from .oreops import DiffOp

__all__ = ["parse_operator", "parse_polynomial", "parse_scalar", "read_operator_file", "strip_comments"]

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()])|(\s+)|(.)", re.S)


def _locate(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _tokenize(text: str):
    toks = []
    for m in _TOKEN.finditer(text):
        num, name, sym, _, bad = m.groups()
        if bad is not None:
            raise OperatorSyntaxError(f"unexpected character {bad!r}", *_locate(text, m.start()), text)
        if num is not None:
            toks.append(("int", int(num), m.start()))
        elif name is not None:
            toks.append(("name", name, m.start()))
        elif sym is not None:
            toks.append((sym, sym, m.start()))
    toks.append(("end", None, len(text.rstrip())))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def error(self, msg, tok, cls=OperatorSyntaxError):
        raise cls(msg, *_locate(self.text, tok[2]), self.text)

    def expect(self, kind):
        t = self.take()
        if t[0] != kind:
            self.error(f"expected {kind!r}", t)
        return t

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression", self.peek())
        node = self.expr()
        t = self.peek()
        if t[0] != "end":
            self.error(f"unexpected {t[1]!r}", t)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()
            node = (op[0], node, self.term(), op[2])
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            node = (op[0], node, self.unary(), op[2])
        return node

    def unary(self):
        t = self.peek()
        if t[0] in ("+", "-"):
            self.take()
            inner = self.unary()
            return ("neg", inner, None, t[2]) if t[0] == "-" else inner
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek()[0] == "^":
            self.take()
            t = self.peek()
            if t[0] != "int":
                self.error("exponents must be nonnegative integer literals", t, NonIntegerExponent)
            self.take()
            node = ("^", node, t[1], t[2])
        return node

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return ("num", t[1], None, t[2])
        if t[0] == "name":
            return ("name", t[1], None, t[2])
        if t[0] == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t[0] == "end":
            self.error("unexpected end of expression", t)
        self.error(f"unexpected {t[1]!r}", t)


class _OperatorEval:
    def __init__(self, text):
        self.text = text

    def fail(self, msg, pos):
        raise OperatorSyntaxError(msg, *_locate(self.text, pos), self.text)

    def __call__(self, node):
        kind, a, b, pos = node
        if kind == "num":
            return DiffOp.scalar(a)
        if kind == "name":
            if a == "D":
                return DiffOp.d(1)
            if a == "i":
                return DiffOp.scalar(GaussRat(0, 1))
            return DiffOp([MPoly.var(a)])
        if kind == "neg":
            return -self(a)
        if kind == "^":
            return self(a) ** b
        left, right = self(a), self(b)
        if kind == "+":
            return left + right
        if kind == "-":
            return left - right
        if kind == "*":
            return left * right
        # division
        if right.is_zero():
            self.fail("division by zero", pos)
        if right.order != 0:
            self.fail("divisor must not contain D", pos)
        c = right.coeff(0)
        if not c.is_constant() and set(c.num.used_vars()) - {"x"}:
            self.fail("divisor must be a rational function of x", pos)
        return left.left_scale(c.inverse())


class _PolyEval:
    def __init__(self, text):
        self.text = text

    def fail(self, msg, pos):
        raise OperatorSyntaxError(msg, *_locate(self.text, pos), self.text)

    def __call__(self, node):
        kind, a, b, pos = node
        if kind == "num":
            return MPoly.const(a)
        if kind == "name":
            if a == "D":
                self.fail("D is not allowed in a polynomial", pos)
            if a == "i":
                return MPoly.const(GaussRat(0, 1))
            return MPoly.var(a)
        if kind == "neg":
            return -self(a)
        if kind == "^":
            return self(a) ** b
        left, right = self(a), self(b)
        if kind == "+":
            return left + right
        if kind == "-":
            return left - right
        if kind == "*":
            return left * right
        if not right.is_constant() or right.is_zero():
            self.fail("polynomial division needs a nonzero constant divisor", pos)
        return left.scale(right.constant_value().inverse())


def strip_comments(text: str) -> str:
    """Drop ``#`` comments, keeping line structure for error positions."""
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse_operator(text: str) -> DiffOp:
    text = strip_comments(text)
    return _OperatorEval(text)(_Parser(text).parse())


def parse_polynomial(text: str) -> MPoly:
    text = strip_comments(text)
    return _PolyEval(text)(_Parser(text).parse()).trim()


def parse_scalar(text: str) -> GaussRat:
    p = parse_polynomial(text)
    if not p.is_constant():
        raise OperatorSyntaxError(f"expected a number, got {text!r}", 1, 1, text)
    return p.constant_term()


def read_operator_file(path) -> DiffOp:
    with open(path, encoding="utf-8") as fh:
        return parse_operator(fh.read())

