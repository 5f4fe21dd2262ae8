"""Expression parser for coefficients and algebra elements.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := INT | 'q' ['^' ['-'] INT] | 'qhat' | NAME | '(' expr ')'

``/`` only divides by a nonzero rational constant.  Names are identifiers
such as ``x1`` or ``Xb3``, optionally followed by a matrix index ``[r,s]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .engine import Element, multiply_elements
from .qcoeff import QHAT, LaurentPoly, qpow


class ParseError(SyntaxError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class UnknownGenerator(ParseError):
    def __init__(self, name: str, pos: int):
        super().__init__(f"unknown generator {name!r}", pos)
        self.name = name


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\[\d+,\d+\])?)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Num:
    value: LaurentPoly


@dataclass(frozen=True)
class Gen:
    name: str
    id: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"
    sub: bool = False


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


Node = Union[Num, Gen, Neg, Add, Mul, Div]


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[start]!r}", start)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, alphabet: Sequence[str] | None):
        self.toks = _tokenize(src)
        self.k = 0
        self.index = {nm: i for i, nm in enumerate(alphabet or [])}

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def expr(self) -> Node:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            node = self.term()
            if val == "-":
                node = Neg(node)
        else:
            node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = Add(node, self.term(), sub=val == "-")
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                node = Mul(node, rhs) if val == "*" else Div(node, rhs)
            else:
                return node

    def factor(self) -> Node:
        kind, val, pos = self.take()
        if kind == "int":
            return Num(LaurentPoly.const(int(val)))
        if kind == "name":
            if val == "qhat":
                return Num(QHAT)
            if val == "q":
                k, v, _ = self.peek()
                if k == "op" and v == "^":
                    self.take()
                    sign = 1
                    k, v, p = self.take()
                    if k == "op" and v == "-":
                        sign = -1
                        k, v, p = self.take()
                    if k != "int":
                        raise ParseError("expected integer exponent", p)
                    return Num(qpow(sign * int(v)))
                return Num(qpow(1))
            if val not in self.index:
                raise UnknownGenerator(val, pos)
            return Gen(val, self.index[val], pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_expression(src: str, alphabet: Sequence[str] | None = None) -> Node:
    p = _Parser(src, alphabet)
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return node


def evaluate(node: Node, size: int | None = None) -> Element:
    if isinstance(node, Num):
        return Element.scalar(node.value, size)
    if isinstance(node, Gen):
        return Element.gen(node.id, size)
    if isinstance(node, Neg):
        return -evaluate(node.arg, size)
    if isinstance(node, Add):
        a, b = evaluate(node.left, size), evaluate(node.right, size)
        return a - b if node.sub else a + b
    if isinstance(node, Mul):
        return multiply_elements(evaluate(node.left, size), evaluate(node.right, size))
    if isinstance(node, Div):
        d = evaluate(node.right, size)
        c = d.coefficient(())
        if d.words() != [()] or not c.is_monomial() or c.degree() != 0:
            raise ParseError("can only divide by a nonzero rational constant", _first_pos(node.right))
        c = c.leading_coefficient()
        return evaluate(node.left, size).scale(LaurentPoly.const(Fraction(1) / Fraction(c)))
    raise TypeError(node)


def _first_pos(node: Node) -> int:
    if isinstance(node, Gen):
        return node.pos
    for attr in ("arg", "left"):
        if hasattr(node, attr):
            return _first_pos(getattr(node, attr))
    return 0


def to_source(node: Node) -> str:
    """Print an AST back to source; parsing the result gives the same AST."""
    if isinstance(node, Num):
        return _atom(node.value)
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.arg)})"
    if isinstance(node, Add):
        return f"({to_source(node.left)} {'-' if node.sub else '+'} {to_source(node.right)})"
    if isinstance(node, Mul):
        return f"({to_source(node.left)}*{to_source(node.right)})"
    if isinstance(node, Div):
        return f"({to_source(node.left)}/{to_source(node.right)})"
    raise TypeError(node)


def _atom(c: LaurentPoly) -> str:
    if c == QHAT:
        return "qhat"
    if c.is_monomial():
        (e, a), = c.terms
        if e == 0 and a >= 0 and Fraction(a).denominator == 1:
            return str(a)
        if a == 1:
            return "q" if e == 1 else f"q^{e}"
    return f"({c})"


def parse_element(src: str, names: Sequence[str]) -> Element:
    return evaluate(parse_expression(src, names), len(names))


def parse_coefficient(src: str) -> LaurentPoly:
    e = evaluate(parse_expression(src, ()))
    if not e:
        return LaurentPoly()
    if e.words() != [()]:
        raise ParseError("coefficient contains generators", 0)
    return e.coefficient(())
