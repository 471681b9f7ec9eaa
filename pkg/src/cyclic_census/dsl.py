"""GroupSpec construction AST and its text syntax.

Grammar (whitespace insignificant, ``x`` is left-associative)::

    spec   := factor ("x" factor)*
    factor := "(" spec ")" | "C" n | "D" n | "Dic" n | "Q" n | "SD" n
            | "M(" p "," a ")" | "EA(" p "," k ")" | "SD(" m "," k "," r ")"
            | "A4" | "SL23" | "Z3A4" | "F5"
    n      := int ("^" int)?

``Q n`` and ``SD n`` take the group order (a power of two, at least 8).
``D n`` is the dihedral group of order 2n.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Union

from .errors import InvalidAction, MalformedSpec, OrderCapExceeded

DEFAULT_ORDER_CAP = 2048
NAMED = ("A4", "SL23", "Z3A4", "F5")


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class DirectProduct:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class SemidirectCyclic:
    """Z_m x| Z_k where the top generator raises the base generator to the r-th power."""

    m: int
    k: int
    r: int


@dataclass(frozen=True)
class SemidirectKlein9:
    """(Z2 x Z2) x| Z9, the Z9 generator acting through its order-3 quotient."""


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Dicyclic:
    n: int


@dataclass(frozen=True)
class GeneralizedQuaternion:
    a: int


@dataclass(frozen=True)
class Semidihedral:
    a: int


@dataclass(frozen=True)
class ModularPGroup:
    p: int
    a: int


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int
    k: int


@dataclass(frozen=True)
class Named:
    name: str


GroupSpec = Union[
    Cyclic, DirectProduct, SemidirectCyclic, SemidirectKlein9, Dihedral, Dicyclic,
    GeneralizedQuaternion, Semidihedral, ModularPGroup, ElementaryAbelian, Named,
]

_NAMED_ORDERS = {"A4": 12, "SL23": 24, "Z3A4": 36, "F5": 20}


def spec_order(spec: GroupSpec) -> int:
    """Arithmetic order of the group a spec describes (no table is built)."""
    match spec:
        case Cyclic(n):
            return n
        case DirectProduct(a, b):
            return spec_order(a) * spec_order(b)
        case SemidirectCyclic(m, k, _):
            return m * k
        case SemidirectKlein9():
            return 36
        case Dihedral(n):
            return 2 * n
        case Dicyclic(n):
            return 4 * n
        case GeneralizedQuaternion(a) | Semidihedral(a):
            return 2**a
        case ModularPGroup(p, a):
            return p**a
        case ElementaryAbelian(p, k):
            return p**k
        case Named(name):
            return _NAMED_ORDERS[name]
    raise MalformedSpec(f"unknown spec node {spec!r}")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def validate(spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP) -> None:
    """Check structural invariants and the order cap; raise on violation."""
    _validate_node(spec)
    n = spec_order(spec)
    if n > order_cap:
        raise OrderCapExceeded(f"order {n} exceeds cap {order_cap}")


def _validate_node(spec: GroupSpec) -> None:
    match spec:
        case Cyclic(n) | Dihedral(n) | Dicyclic(n):
            if n < 1:
                raise MalformedSpec(f"{type(spec).__name__} needs n >= 1, got {n}")
        case DirectProduct(a, b):
            _validate_node(a)
            _validate_node(b)
        case SemidirectCyclic(m, k, r):
            if m < 1 or k < 1:
                raise MalformedSpec(f"semidirect factors must be positive, got m={m}, k={k}")
            if gcd(r, m) != 1:
                raise InvalidAction(f"gcd({r}, {m}) != 1")
            if pow(r, k, m) != 1 % m:
                raise InvalidAction(f"{r}^{k} is not 1 mod {m}")
        case GeneralizedQuaternion(a) | Semidihedral(a):
            if a < 3:
                raise MalformedSpec(f"{type(spec).__name__} needs a >= 3, got {a}")
        case ModularPGroup(p, a):
            if not _is_prime(p):
                raise MalformedSpec(f"ModularPGroup needs a prime, got {p}")
            if a < 3:
                raise MalformedSpec(f"ModularPGroup needs a >= 3, got {a}")
        case ElementaryAbelian(p, k):
            if not _is_prime(p) or k < 0:
                raise MalformedSpec(f"ElementaryAbelian needs prime p and k >= 0, got ({p}, {k})")
        case Named(name):
            if name not in NAMED:
                raise MalformedSpec(f"unknown named group {name!r}")
        case SemidirectKlein9():
            pass
        case _:
            raise MalformedSpec(f"unknown spec node {spec!r}")


def render(spec: GroupSpec) -> str:
    """Inverse of parse_spec (up to whitespace and parentheses)."""
    match spec:
        case Cyclic(n):
            return f"C {n}"
        case DirectProduct(a, b):
            right = render(b)
            if isinstance(b, DirectProduct):
                right = f"({right})"
            return f"{render(a)} x {right}"
        case SemidirectCyclic(m, k, r):
            return f"SD({m},{k},{r})"
        case SemidirectKlein9():
            return "Z3A4"
        case Dihedral(n):
            return f"D {n}"
        case Dicyclic(n):
            return f"Dic {n}"
        case GeneralizedQuaternion(a):
            return f"Q 2^{a}"
        case Semidihedral(a):
            return f"SD 2^{a}"
        case ModularPGroup(p, a):
            return f"M({p},{a})"
        case ElementaryAbelian(p, k):
            return f"EA({p},{k})"
        case Named(name):
            return name
    raise MalformedSpec(f"unknown spec node {spec!r}")


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"(?P<num>\d+)|(?P<word>[A-Za-z][A-Za-z0-9]*)|(?P<sym>[(),^])")
_PREFIXED = re.compile(r"^(Dic|SD|C|D|Q)(\d+)$")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise MalformedSpec(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind, val = m.lastgroup, m.group(m.lastgroup)
        col = m.start(kind) + 1
        if kind == "word":
            # no keyword contains a lowercase x, so "C3xC4" splits cleanly
            for piece in re.split(r"(x)", val):
                if piece:
                    toks.extend(_word_tokens(piece, line, col))
                    col += len(piece)
        else:
            toks.append(_Tok(kind, val, line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, len(text) + 1))
    return toks


def _word_tokens(word: str, line: int, col: int) -> list[_Tok]:
    pm = _PREFIXED.match(word)
    if pm and word not in NAMED:
        head = pm.group(1)
        return [_Tok("word", head, line, col), _Tok("num", pm.group(2), line, col + len(head))]
    return [_Tok("word", word, line, col)]


class _Parser:
    def __init__(self, text: str, line: int):
        self.toks = _tokenize(text, line)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise MalformedSpec(msg, tok.line, tok.col)

    def expect(self, text: str) -> None:
        t = self.take()
        if t.text != text:
            self.fail(f"expected {text!r}, found {t.text or 'end of input'!r}", t)

    def number(self) -> int:
        t = self.take()
        if t.kind != "num":
            self.fail(f"expected a number, found {t.text or 'end of input'!r}", t)
        value = int(t.text)
        if self.peek().text == "^":
            self.take()
            e = self.take()
            if e.kind != "num":
                self.fail("expected an exponent after '^'", e)
            value = value ** int(e.text)
        return value

    def args(self, count: int) -> list[int]:
        self.expect("(")
        vals = [self.number()]
        for _ in range(count - 1):
            self.expect(",")
            vals.append(self.number())
        self.expect(")")
        return vals

    def spec(self) -> GroupSpec:
        node = self.factor()
        while self.peek().kind == "word" and self.peek().text == "x":
            self.take()
            node = DirectProduct(node, self.factor())
        return node

    def factor(self) -> GroupSpec:
        t = self.peek()
        if t.text == "(":
            self.take()
            node = self.spec()
            self.expect(")")
            return node
        if t.kind != "word":
            self.fail(f"expected a group, found {t.text or 'end of input'!r}")
        self.take()
        word = t.text
        if word in NAMED:
            return Named(word)
        if word == "C":
            return Cyclic(self.number())
        if word == "D":
            return Dihedral(self.number())
        if word == "Dic":
            return Dicyclic(self.number())
        if word == "Q":
            return GeneralizedQuaternion(self._two_power(t))
        if word == "SD":
            if self.peek().text == "(":
                m, k, r = self.args(3)
                return SemidirectCyclic(m, k, r)
            return Semidihedral(self._two_power(t))
        if word == "M":
            p, a = self.args(2)
            return ModularPGroup(p, a)
        if word == "EA":
            p, k = self.args(2)
            return ElementaryAbelian(p, k)
        self.fail(f"unknown group symbol {word!r}", t)

    def _two_power(self, tok: _Tok) -> int:
        n = self.number()
        a = n.bit_length() - 1
        if n < 8 or n != 2**a:
            self.fail(f"{tok.text} needs a power of two >= 8, got {n}", tok)
        return a


def parse_spec(text: str, line: int = 1) -> GroupSpec:
    """Parse one spec. ``line`` only affects error positions."""
    p = _Parser(text, line)
    if p.peek().kind == "eof":
        p.fail("empty spec")
    node = p.spec()
    if p.peek().kind != "eof":
        p.fail(f"unexpected trailing input {p.peek().text!r}")
    return node


def parse_specs(text: str) -> list[GroupSpec]:
    """Parse a document with one spec per non-blank line (``#`` starts a comment)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            out.append(parse_spec(body, lineno))
    return out
