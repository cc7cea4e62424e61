"""First-order formulas over one binary predicate ``R`` and unary ``P_p``.

Plain text syntax (also produced by :func:`to_text`)::

    formula := quant | imp
    quant   := ('exists' | 'forall') VAR '.' formula
    imp     := disj ('->' formula)?          # right associative
    disj    := conj ('|' conj)*              # classical disjunction
    conj    := unary ('&' unary)*
    unary   := '~' unary | quant | primary
    primary := 'P_' NAME '(' VAR ')' | 'R' '(' VAR ',' VAR ')'
             | VAR '=' VAR | '(' formula ')'

Variables start with a lowercase letter.  A quantifier body extends as far
to the right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .formula import FormulaSyntaxError, _Node


def _node(cls):
    cls.__hash__ = _Node.__hash__
    return dataclass(frozen=True, eq=True)(cls)


@_node
class Pred(_Node):
    prop: str
    var: str
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.prop, self.var)


@_node
class Rel(_Node):
    left: str
    right: str
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.left, self.right)


@_node
class Eq(_Node):
    left: str
    right: str
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.left, self.right)


@_node
class Not(_Node):
    body: "FOLFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.body,)


@_node
class And(_Node):
    left: "FOLFormula"
    right: "FOLFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.left, self.right)


@_node
class OrC(_Node):
    left: "FOLFormula"
    right: "FOLFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.left, self.right)


@_node
class Implies(_Node):
    left: "FOLFormula"
    right: "FOLFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.left, self.right)


@_node
class Exists(_Node):
    var: str
    body: "FOLFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.var, self.body)


@_node
class Forall(_Node):
    var: str
    body: "FOLFormula"
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def _key(self):
        return (self.var, self.body)


FOLFormula = Pred | Rel | Eq | Not | And | OrC | Implies | Exists | Forall
BINARY = (And, OrC, Implies)
QUANTIFIERS = (Exists, Forall)


def conj(parts) -> FOLFormula:
    parts = list(parts)
    result = parts[0]
    for p in parts[1:]:
        result = And(result, p)
    return result


def iff(a, b) -> FOLFormula:
    return And(Implies(a, b), Implies(b, a))


def free_vars(alpha: FOLFormula) -> frozenset[str]:
    memo = {}

    def go(f):
        if f in memo:
            return memo[f]
        if isinstance(f, Pred):
            r = frozenset({f.var})
        elif isinstance(f, (Rel, Eq)):
            r = frozenset({f.left, f.right})
        elif isinstance(f, Not):
            r = go(f.body)
        elif isinstance(f, BINARY):
            r = go(f.left) | go(f.right)
        else:
            r = go(f.body) - {f.var}
        memo[f] = r
        return r

    return go(alpha)


def all_vars(alpha: FOLFormula) -> frozenset[str]:
    out = set()
    stack = [alpha]
    while stack:
        f = stack.pop()
        if isinstance(f, Pred):
            out.add(f.var)
        elif isinstance(f, (Rel, Eq)):
            out.update((f.left, f.right))
        elif isinstance(f, Not):
            stack.append(f.body)
        elif isinstance(f, BINARY):
            stack.extend((f.left, f.right))
        else:
            out.add(f.var)
            stack.append(f.body)
    return frozenset(out)


def predicates(alpha: FOLFormula) -> list[str]:
    """Proposition names of the unary predicates, in first-occurrence order."""
    out = []
    stack = [alpha]
    while stack:
        f = stack.pop()
        if isinstance(f, Pred):
            if f.prop not in out:
                out.append(f.prop)
        elif isinstance(f, Not) or isinstance(f, QUANTIFIERS):
            stack.append(f.body)
        elif isinstance(f, BINARY):
            stack.extend((f.right, f.left))
    return out


# -- plain text --------------------------------------------------------------

_OPS = {And: "&", OrC: "|", Implies: "->"}


def to_text(alpha: FOLFormula) -> str:
    """Render in the plain syntax; binary nodes are always parenthesised."""
    if isinstance(alpha, Pred):
        return f"P_{alpha.prop}({alpha.var})"
    if isinstance(alpha, Rel):
        return f"R({alpha.left},{alpha.right})"
    if isinstance(alpha, Eq):
        return f"{alpha.left} = {alpha.right}"
    if isinstance(alpha, Not):
        body = to_text(alpha.body)
        if isinstance(alpha.body, (Eq,) + QUANTIFIERS):
            body = f"({body})"
        return f"~{body}"
    if isinstance(alpha, BINARY):
        left, right = to_text(alpha.left), to_text(alpha.right)
        if isinstance(alpha.left, QUANTIFIERS):
            left = f"({left})"
        if isinstance(alpha.right, QUANTIFIERS):
            right = f"({right})"
        return f"({left} {_OPS[type(alpha)]} {right})"
    word = "exists" if isinstance(alpha, Exists) else "forall"
    return f"{word} {alpha.var}. {to_text(alpha.body)}"


_FTOKEN = re.compile(
    r"\s*(?:(?P<pred>P_[A-Za-z0-9_]+)|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>->|[()~&|=.,]))"
)
_VAR = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def parse_fol(text: str) -> FOLFormula:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _FTOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r} at {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    i = 0

    def peek():
        return tokens[i][1] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        if i >= len(tokens):
            raise FormulaSyntaxError("unexpected end of input")
        kind, tok, p = tokens[i]
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r} at {p}, got {tok!r}")
        i += 1
        return kind, tok

    def var():
        kind, tok = take()
        if kind != "word" or not _VAR.match(tok) or tok in ("exists", "forall"):
            raise FormulaSyntaxError(f"expected a variable, got {tok!r}")
        return tok

    def formula():
        if peek() in ("exists", "forall"):
            return quant()
        left = disj()
        if peek() == "->":
            take()
            return Implies(left, formula())
        return left

    def quant():
        _, word = take()
        v = var()
        take(".")
        body = formula()
        return Exists(v, body) if word == "exists" else Forall(v, body)

    def disj():
        left = conj_()
        while peek() == "|":
            take()
            left = OrC(left, conj_())
        return left

    def conj_():
        left = unary()
        while peek() == "&":
            take()
            left = And(left, unary())
        return left

    def unary():
        if peek() == "~":
            take()
            return Not(unary())
        if peek() in ("exists", "forall"):
            return quant()
        return primary()

    def primary():
        kind, tok = take()
        if tok == "(":
            inner = formula()
            take(")")
            return inner
        if kind == "pred":
            take("(")
            v = var()
            take(")")
            return Pred(tok[2:], v)
        if tok == "R" and peek() == "(":
            take("(")
            a = var()
            take(",")
            b = var()
            take(")")
            return Rel(a, b)
        if kind == "word" and _VAR.match(tok):
            take("=")
            return Eq(tok, var())
        raise FormulaSyntaxError(f"unexpected token {tok!r}")

    result = formula()
    if i != len(tokens):
        raise FormulaSyntaxError(f"trailing input at {tokens[i][2]}")
    return result
