"""Parser and compiler for potential expressions.

Grammar: number literals, the variable ``x``, the binary operators
``+ - * / ^`` (``^`` right-associative, everything else left-associative,
standard precedence), unary minus, the functions ``abs``, ``sgn``, ``exp``,
``sin``, ``cos``, ``sqrt`` (one argument) and ``min``, ``max`` (two
arguments), and parentheses.

Expressions compile to a flat postfix program (an opcode array plus a
constant array) executed by the stack machine in :mod:`signsl.kernels`, so
the same compiled form feeds both the numba and the numpy backend.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError

# stack-machine opcodes; keep in sync with kernels.eval_program
OP_CONST = 0
OP_X = 1
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_POW = 6
OP_NEG = 7
OP_ABS = 8
OP_SGN = 9
OP_EXP = 10
OP_SIN = 11
OP_COS = 12
OP_SQRT = 13
OP_MIN = 14
OP_MAX = 15

_UNARY_FUNCS = {"abs": OP_ABS, "sgn": OP_SGN, "exp": OP_EXP,
                "sin": OP_SIN, "cos": OP_COS, "sqrt": OP_SQRT}
_BINARY_FUNCS = {"min": OP_MIN, "max": OP_MAX}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or a function name
    arg: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^ min max
    left: "Node"
    right: "Node"


Node = Num | Var | Unary | Binary

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "num":
            tokens.append(("num", float(m.group("num")), m.start("num")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        node = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return node

    # expr := term (('+'|'-') term)*
    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                node = Binary(val, node, self.term())
            else:
                return node

    # term := factor (('*'|'/') factor)*
    def term(self):
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                node = Binary(val, node, self.factor())
            else:
                return node

    # factor := '-' factor | power
    def factor(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return Unary("-", self.factor())
        return self.power()

    # power := atom ('^' factor)?   (right-associative; rhs may carry unary minus)
    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            return Binary("^", base, self.factor())
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return Num(val)
        if kind == "name":
            if val == "x":
                return Var()
            if val in _UNARY_FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Unary(val, arg)
            if val in _BINARY_FUNCS:
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return Binary(val, a, b)
            raise ParseError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError("expected a value", pos)


def parse(text: str) -> Node:
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()


def unparse(node: Node) -> str:
    """Render an AST back to source; fully parenthesized, so the result
    reparses to an identical tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Unary):
        if node.op == "-":
            return f"(-{unparse(node.arg)})"
        return f"{node.op}({unparse(node.arg)})"
    if node.op in _BINARY_FUNCS:
        return f"{node.op}({unparse(node.left)}, {unparse(node.right)})"
    return f"({unparse(node.left)} {node.op} {unparse(node.right)})"


def substitute_neg_x(node: Node) -> Node:
    """Replace x by -x everywhere (used to reflect a potential)."""
    if isinstance(node, Num):
        return node
    if isinstance(node, Var):
        return Unary("-", Var())
    if isinstance(node, Unary):
        return Unary(node.op, substitute_neg_x(node.arg))
    return Binary(node.op, substitute_neg_x(node.left), substitute_neg_x(node.right))


_BIN_OPS = {"+": OP_ADD, "-": OP_SUB, "*": OP_MUL, "/": OP_DIV, "^": OP_POW}


def compile_program(node: Node):
    """Flatten an AST to (code, consts) postfix arrays for the stack machine."""
    code: list[int] = []
    consts: list[float] = []

    def emit(n):
        if isinstance(n, Num):
            code.append(OP_CONST)
            consts.append(n.value)
        elif isinstance(n, Var):
            code.append(OP_X)
            consts.append(0.0)
        elif isinstance(n, Unary):
            emit(n.arg)
            code.append(OP_NEG if n.op == "-" else _UNARY_FUNCS[n.op])
            consts.append(0.0)
        else:
            emit(n.left)
            emit(n.right)
            code.append(_BIN_OPS[n.op] if n.op in _BIN_OPS else _BINARY_FUNCS[n.op])
            consts.append(0.0)

    emit(node)
    return np.asarray(code, dtype=np.int64), np.asarray(consts, dtype=np.float64)
