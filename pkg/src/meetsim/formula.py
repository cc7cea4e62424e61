"""Formulae of non-distributive positive logic and their text syntax.

Grammar (whitespace-insensitive)::

    formula := disj
    disj    := conj ('|' conj)*
    conj    := atom ('&' atom)*
    atom    := 'top' | 'bot' | IDENT | '(' formula ')'

``&`` binds tighter than ``|``; both associate to the left.  The printer
always parenthesises binary nodes, so ``str(phi)`` parses back to ``phi``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator


class _Node:
    """Mixin caching the structural hash; formulas are shared heavily."""

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True, eq=True)
class Prop(_Node):
    name: str
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.name,)

    __hash__ = _Node.__hash__

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class Top(_Node):
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return ()

    __hash__ = _Node.__hash__

    def __str__(self):
        return "top"


@dataclass(frozen=True, eq=True)
class Bot(_Node):
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return ()

    __hash__ = _Node.__hash__

    def __str__(self):
        return "bot"


@dataclass(frozen=True, eq=True)
class And(_Node):
    left: "LFormula"
    right: "LFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True, eq=True)
class Or(_Node):
    left: "LFormula"
    right: "LFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"({self.left} | {self.right})"


LFormula = Prop | Top | Bot | And | Or

TOP = Top()
BOT = Bot()


def conj(formulas) -> LFormula:
    """Left-folded conjunction; the empty conjunction is ``top``."""
    result = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return TOP if result is None else result


def subformulas(phi: LFormula) -> Iterator[LFormula]:
    """Post-order traversal (children before parents), shared nodes once."""
    seen = set()
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if node in seen:
            continue
        if expanded or isinstance(node, (Prop, Top, Bot)):
            seen.add(node)
            yield node
            continue
        stack.append((node, True))
        stack.append((node.right, False))
        stack.append((node.left, False))


def _measure(phi, leaf, combine):
    memo = {}
    for node in subformulas(phi):
        if isinstance(node, (And, Or)):
            memo[node] = combine(node, memo[node.left], memo[node.right])
        else:
            memo[node] = leaf(node)
    return memo[phi]


def depth(phi: LFormula) -> int:
    """Connective nesting depth; atoms have depth 0."""
    return _measure(phi, lambda _: 0, lambda _, a, b: 1 + max(a, b))


def or_depth(phi: LFormula) -> int:
    """Nesting depth counting only disjunctions."""
    return _measure(
        phi, lambda _: 0, lambda n, a, b: max(a, b) + (1 if isinstance(n, Or) else 0)
    )


def size(phi: LFormula) -> int:
    """Number of nodes of the formula tree."""
    return _measure(phi, lambda _: 1, lambda _, a, b: 1 + a + b)


def props(phi: LFormula) -> frozenset[str]:
    return frozenset(n.name for n in subformulas(phi) if isinstance(n, Prop))


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[()&|]))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"top", "bot"})


class FormulaSyntaxError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            return tokens
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r} at {pos}")
        tokens.append((m.group("ident") or m.group("sym"), pos))
        pos = m.end()


def parse_formula(text: str) -> LFormula:
    """Parse the text syntax into an :data:`LFormula`."""
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i][0] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        if i >= len(tokens):
            raise FormulaSyntaxError("unexpected end of input")
        tok, pos = tokens[i]
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r} at {pos}, got {tok!r}")
        i += 1
        return tok

    def disj():
        left = conj_()
        while peek() == "|":
            take()
            left = Or(left, conj_())
        return left

    def conj_():
        left = atom()
        while peek() == "&":
            take()
            left = And(left, atom())
        return left

    def atom():
        tok = take()
        if tok == "(":
            inner = disj()
            take(")")
            return inner
        if tok == "top":
            return TOP
        if tok == "bot":
            return BOT
        if _IDENT.match(tok):
            return Prop(tok)
        raise FormulaSyntaxError(f"unexpected token {tok!r}")

    result = disj()
    if i != len(tokens):
        raise FormulaSyntaxError(f"trailing input at {tokens[i][1]}")
    return result
