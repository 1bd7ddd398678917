"""Expression text for elements and fractions.

Grammar (whitespace insensitive, explicit ``*`` everywhere):

    expr   := term {("+"|"-") term}
    term   := factor {"*" factor}
    factor := atom ["^" uint]
    atom   := rational | "i" | ident | "(" expr ")" | "inv(" expr ")" | "adj(" expr ")"

Identifiers depend on the preset: p, q, s1, s2 for weyl; a, b, sb, s[n] for
axb; x, s for comm. A leading minus folds into a rational literal when it
cannot be a binary minus, so canonical coefficient strings round-trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q

from .algebra import Element, Presentation
from .errors import BadInverse, ExprSyntaxError, UnknownGenerator
from .ore import (
    DenomAtom,
    DenomWord,
    RightFraction,
    frac_add,
    frac_from_element,
    frac_mul,
    frac_pow,
    frac_star,
    frac_sub,
)
from .scalars import I


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Q


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Inv:
    arg: object


@dataclass(frozen=True)
class Adj:
    arg: object


# -- tokenizer -----------------------------------------------------------------

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*(\[-?\d+\])?")
_NUM_RE = re.compile(r"\d+(/\d+)?")


def _tokenize(text: str):
    tokens = []  # (kind, value, position)
    pos = 0
    prev_kind = None
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "-" and pos + 1 < len(text) and text[pos + 1].isdigit() and prev_kind not in ("num", "ident", "rparen"):
            m = _NUM_RE.match(text, pos + 1)
            tokens.append(("num", -Q(m.group(0)), pos))
            prev_kind = "num"
            pos = m.end()
            continue
        if ch.isdigit():
            m = _NUM_RE.match(text, pos)
            tokens.append(("num", Q(m.group(0)), pos))
            prev_kind = "num"
            pos = m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = _IDENT_RE.match(text, pos)
            tokens.append(("ident", m.group(0), pos))
            prev_kind = "ident"
            pos = m.end()
            continue
        if ch in "+-*^()":
            kind = {"(": "lparen", ")": "rparen"}.get(ch, ch)
            tokens.append((kind, ch, pos))
            prev_kind = kind
            pos += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", pos)
    return tokens


class _Parser:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.idx = 0
        self.length = length

    def peek(self):
        return self.tokens[self.idx] if self.idx < len(self.tokens) else ("eof", None, self.length)

    def next(self):
        tok = self.peek()
        self.idx += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr(self):
        node = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.parse_term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek()[0] == "*":
            self.next()
            node = Mul(node, self.parse_factor())
        return node

    def parse_factor(self):
        node = self.parse_atom()
        if self.peek()[0] == "^":
            self.next()
            tok = self.expect("num")
            value = tok[1]
            if value.denominator != 1 or value < 0:
                raise ExprSyntaxError("exponent must be a nonnegative integer", tok[2])
            node = Pow(node, int(value))
        return node

    def parse_atom(self):
        kind, value, pos = self.next()
        if kind == "num":
            return Num(value)
        if kind == "lparen":
            node = self.parse_expr()
            self.expect("rparen")
            return node
        if kind == "ident":
            if value in ("inv", "adj") and self.peek()[0] == "lparen":
                self.next()
                node = self.parse_expr()
                self.expect("rparen")
                return Inv(node) if value == "inv" else Adj(node)
            if value == "i":
                return ImagUnit()
            return Gen(value)
        raise ExprSyntaxError(f"unexpected token {value!r}", pos)


_VOCAB = {
    "weyl": ("p", "q", "s1", "s2"),
    "axb": ("a", "b", "sb"),
    "comm": ("x", "s"),
}

_SHIFT_RE = re.compile(r"s\[(-?\d+)\]$")


def _check_idents(node, pres: Presentation):
    if isinstance(node, Gen):
        if node.name in _VOCAB[pres.kind]:
            return
        if pres.kind == "axb" and _SHIFT_RE.match(node.name):
            return
        raise UnknownGenerator(f"{node.name!r} is not defined for the {pres.kind} preset")
    for attr in ("left", "right", "base", "arg"):
        child = getattr(node, attr, None)
        if child is not None:
            _check_idents(child, pres)


def parse_expression(text: str, pres: Presentation):
    """Parse text into a syntax tree, validating identifiers for the preset."""
    parser = _Parser(_tokenize(text), len(text))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "eof":
        raise ExprSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    _check_idents(node, pres)
    return node


# -- printing ------------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_POW, _LEVEL_ATOM = 0, 1, 2, 3


def print_ast(node) -> str:
    return _print(node, _LEVEL_ADD)


def _print(node, level) -> str:
    if isinstance(node, Num):
        text = str(node.value)
        own = _LEVEL_ATOM if node.value >= 0 else _LEVEL_MUL
        return _wrap(text, own, level)
    if isinstance(node, ImagUnit):
        return "i"
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Add):
        return _wrap(f"{_print(node.left, _LEVEL_ADD)}+{_print(node.right, _LEVEL_MUL)}", _LEVEL_ADD, level)
    if isinstance(node, Sub):
        return _wrap(f"{_print(node.left, _LEVEL_ADD)}-{_print(node.right, _LEVEL_MUL)}", _LEVEL_ADD, level)
    if isinstance(node, Mul):
        return _wrap(f"{_print(node.left, _LEVEL_MUL)}*{_print(node.right, _LEVEL_POW)}", _LEVEL_MUL, level)
    if isinstance(node, Pow):
        return _wrap(f"{_print(node.base, _LEVEL_ATOM)}^{node.exp}", _LEVEL_POW, level)
    if isinstance(node, Inv):
        return f"inv({_print(node.arg, _LEVEL_ADD)})"
    if isinstance(node, Adj):
        return f"adj({_print(node.arg, _LEVEL_ADD)})"
    raise TypeError(f"not a syntax node: {node!r}")


def _wrap(text, own_level, context_level) -> str:
    return f"({text})" if own_level < context_level else text


# -- evaluation ----------------------------------------------------------------


def _atom_from_name(name: str, pres: Presentation) -> DenomAtom:
    if pres.kind == "weyl" and name in ("s1", "s2"):
        return DenomAtom(name)
    if pres.kind == "axb":
        if name == "sb":
            return DenomAtom("sb")
        m = _SHIFT_RE.match(name)
        if m:
            return DenomAtom("sn", int(m.group(1)))
    if pres.kind == "comm" and name == "s":
        return DenomAtom("s")
    return None


def _gen_element(name: str, pres: Presentation) -> Element:
    if name in pres.gen_names:
        return Element.gen(pres, name)
    atom = _atom_from_name(name, pres)
    if atom is not None:
        return atom.element(pres)
    raise UnknownGenerator(f"{name!r} is not defined for the {pres.kind} preset")


def to_element(node, pres: Presentation) -> Element:
    """Evaluate a tree without inverses to its canonical element."""
    if isinstance(node, Num):
        return Element.scalar(pres, node.value)
    if isinstance(node, ImagUnit):
        return Element(pres, {(0, 0): I})
    if isinstance(node, Gen):
        return _gen_element(node.name, pres)
    if isinstance(node, Add):
        return to_element(node.left, pres) + to_element(node.right, pres)
    if isinstance(node, Sub):
        return to_element(node.left, pres) - to_element(node.right, pres)
    if isinstance(node, Mul):
        return to_element(node.left, pres) * to_element(node.right, pres)
    if isinstance(node, Pow):
        return to_element(node.base, pres) ** node.exp
    if isinstance(node, Adj):
        return to_element(node.arg, pres).star()
    if isinstance(node, Inv):
        raise BadInverse("inverses produce fractions; this context needs a plain element")
    raise TypeError(f"not a syntax node: {node!r}")


def to_word(node, pres: Presentation) -> DenomWord:
    """Interpret a tree as a product of denominator atoms."""
    if isinstance(node, Gen):
        atom = _atom_from_name(node.name, pres)
        if atom is None:
            raise BadInverse(f"{node.name!r} is not a denominator atom")
        return DenomWord((atom,))
    if isinstance(node, Num) and node.value == 1:
        return DenomWord()
    if isinstance(node, Mul):
        return to_word(node.left, pres).concat(to_word(node.right, pres))
    if isinstance(node, Pow):
        base = to_word(node.base, pres)
        word = DenomWord()
        for _ in range(node.exp):
            word = word.concat(base)
        return word
    if isinstance(node, Adj):
        return to_word(node.arg, pres).star()
    raise BadInverse("only products of denominator atoms can be inverted")


def to_fraction(node, pres: Presentation) -> RightFraction:
    """Evaluate a tree, inverses included, to a right fraction."""
    if isinstance(node, Inv):
        return RightFraction(pres, Element.one(pres), to_word(node.arg, pres))
    if isinstance(node, Adj):
        return frac_star(to_fraction(node.arg, pres))
    if isinstance(node, Add):
        return frac_add(to_fraction(node.left, pres), to_fraction(node.right, pres))
    if isinstance(node, Sub):
        return frac_sub(to_fraction(node.left, pres), to_fraction(node.right, pres))
    if isinstance(node, Mul):
        return frac_mul(to_fraction(node.left, pres), to_fraction(node.right, pres))
    if isinstance(node, Pow):
        return frac_pow(to_fraction(node.base, pres), node.exp)
    return frac_from_element(to_element(node, pres))


def parse_element(text: str, pres: Presentation) -> Element:
    """Parse and normal-order an element expression."""
    return to_element(parse_expression(text, pres), pres)


def parse_fraction(text: str, pres: Presentation) -> RightFraction:
    return to_fraction(parse_expression(text, pres), pres)


def parse_word(text: str, pres: Presentation) -> DenomWord:
    return to_word(parse_expression(text, pres), pres)
