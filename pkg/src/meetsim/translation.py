"""Standard translation into first-order logic and finite FOL evaluation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import fol
from .core import Model, Poset, _derive_meets, _derive_top, _readonly
from .fol import (And, Eq, Exists, FOLFormula, Forall, Implies, Not, OrC, Pred,
                  Rel, free_vars, iff)
from .formula import And as LAnd
from .formula import Bot, LFormula, Or, Prop, Top
from .report import Report, failed, passed


class UnboundVariable(KeyError):
    def __str__(self):
        return f"unbound variable {self.args[0]!r}"


class UndeclaredPredicate(KeyError):
    def __str__(self):
        return f"structure has no interpretation for P_{self.args[0]}"


# -- translation -------------------------------------------------------------

def ismeet(x: str, y: str, z: str, fresh: str) -> FOLFormula:
    """``x`` is the meet of ``y`` and ``z``; ``fresh`` is the bound variable."""
    return fol.conj([
        Rel(x, y),
        Rel(x, z),
        Forall(fresh, Implies(And(Rel(fresh, y), Rel(fresh, z)), Rel(fresh, x))),
    ])


class _Fresh:
    def __init__(self, avoid):
        self.avoid = set(avoid)
        self.k = 0

    def __call__(self):
        while True:
            name = f"v{self.k}"
            self.k += 1
            if name not in self.avoid:
                return name


def standard_translate(phi: LFormula, x: str = "x", equality: bool = True) -> FOLFormula:
    """Translate ``phi`` to a FOL formula whose only free variable is ``x``.

    Bound variables come from one counter per call (``v0``, ``v1``, ...),
    skipping ``x``.  With ``equality=False`` the translation of ``top`` is
    the equality-free tautology ``forall v. (R(v,x) -> R(v,x))``.
    """
    fresh = _Fresh([x])

    def go(f, var):
        if isinstance(f, Prop):
            return Pred(f.name, var)
        if isinstance(f, Top):
            if equality:
                return Eq(var, var)
            y = fresh()
            return Forall(y, Implies(Rel(y, var), Rel(y, var)))
        if isinstance(f, Bot):
            y = fresh()
            return Forall(y, Rel(y, var))
        if isinstance(f, LAnd):
            return And(go(f.left, var), go(f.right, var))
        m, y, z, w = fresh(), fresh(), fresh(), fresh()
        body = fol.conj([ismeet(m, y, z, w), Rel(m, var), go(f.left, y), go(f.right, z)])
        return Exists(m, Exists(y, Exists(z, body)))

    return go(phi, x)


# -- structures --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FOLStructure:
    """Finite carrier, interpretation of ``R`` and of each ``P_p``."""

    carrier: tuple[str, ...]
    rel: np.ndarray
    preds: Mapping[str, frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "rel", _readonly(np.asarray(self.rel, dtype=bool)))
        object.__setattr__(self, "preds", {p: frozenset(s) for p, s in self.preds.items()})
        if not self.carrier:
            raise ValueError("carrier must be nonempty")

    @property
    def n(self):
        return len(self.carrier)

    def idx(self, name):
        try:
            return self.carrier.index(name)
        except ValueError:
            raise KeyError(name) from None

    def pred_mask(self, p):
        if p not in self.preds:
            raise UndeclaredPredicate(p)
        m = np.zeros(self.n, dtype=bool)
        m[list(self.preds[p])] = True
        return m

    def __eq__(self, other):
        return (isinstance(other, FOLStructure) and self.carrier == other.carrier
                and np.array_equal(self.rel, other.rel) and self.preds == other.preds)

    __hash__ = None


def to_structure(m: Model) -> FOLStructure:
    return FOLStructure(m.elements, m.leq, dict(m.valuation))


def from_structure(s: FOLStructure) -> Model:
    """Inverse of :func:`to_structure` on structures passing :func:`check_fsl`."""
    report = check_fsl(s)
    if not report:
        raise ValueError(f"structure is not a meet-semilattice model: {report.clause} {report.witness}")
    meet = _derive_meets(s.carrier, s.rel)
    top = _derive_top(s.rel)
    return Model(Poset(s.carrier, s.rel), meet, top, dict(s.preds))


# -- evaluation --------------------------------------------------------------

def _align(vars_, arr, target):
    """Reshape ``arr`` (axes ``vars_``) to broadcast against axes ``target``."""
    order = [vars_.index(v) for v in target if v in vars_]
    arr = np.transpose(arr, order) if order != list(range(len(order))) else arr
    shape = []
    it = iter(arr.shape)
    for v in target:
        shape.append(next(it) if v in vars_ else 1)
    return arr.reshape(shape)


def extension(s: FOLStructure, alpha: FOLFormula, memo: dict | None = None):
    """Satisfying assignments of ``alpha`` as a boolean tensor.

    Returns ``(vars, table)`` where ``vars`` is the sorted tuple of free
    variables and ``table`` has one axis of length ``|carrier|`` per
    variable.  Quantifiers reduce an axis with ``any``/``all``, i.e. they
    range exhaustively over the carrier.
    """
    memo = {} if memo is None else memo
    n = s.n

    def go(f):
        hit = memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Pred):
            out = ((f.var,), s.pred_mask(f.prop))
        elif isinstance(f, (Rel, Eq)):
            base = s.rel if isinstance(f, Rel) else np.eye(n, dtype=bool)
            if f.left == f.right:
                out = ((f.left,), np.diagonal(base).copy())
            elif f.left < f.right:
                out = ((f.left, f.right), base)
            else:
                out = ((f.right, f.left), base.T)
        elif isinstance(f, Not):
            vs, a = go(f.body)
            out = (vs, ~a)
        elif isinstance(f, (And, OrC, Implies)):
            va, a = go(f.left)
            vb, b = go(f.right)
            target = tuple(sorted(set(va) | set(vb)))
            a, b = _align(va, a, target), _align(vb, b, target)
            if isinstance(f, And):
                r = a & b
            elif isinstance(f, OrC):
                r = a | b
            else:
                r = ~a | b
            out = (target, np.broadcast_to(r, (n,) * len(target)))
        else:
            vs, a = go(f.body)
            if f.var in vs:
                axis = vs.index(f.var)
                a = a.any(axis=axis) if isinstance(f, Exists) else a.all(axis=axis)
                vs = vs[:axis] + vs[axis + 1:]
            out = (vs, a)
        memo[f] = out
        return out

    return go(alpha)


def fol_eval(s: FOLStructure, assignment: Mapping[str, str], alpha: FOLFormula) -> bool:
    """Tarskian truth of ``alpha`` in ``s`` under ``assignment`` (names)."""
    vs, table = extension(s, alpha)
    for v in vs:
        if v not in assignment:
            raise UnboundVariable(v)
    return bool(table[tuple(s.idx(assignment[v]) for v in vs)])


def fol_truth_set(s: FOLStructure, alpha: FOLFormula, x: str = "x",
                  memo: dict | None = None) -> np.ndarray:
    """Mask of carrier elements ``w`` with ``s |= alpha[x := w]``."""
    extra = free_vars(alpha) - {x}
    if extra:
        raise UnboundVariable(sorted(extra)[0])
    vs, table = extension(s, alpha, memo)
    if vs == (x,):
        return np.asarray(table, dtype=bool).copy()
    return np.full(s.n, bool(table[()]))


# -- FSL axioms --------------------------------------------------------------

def fsl_axioms(props: Iterable[str] = ()) -> list[tuple[str, FOLFormula]]:
    """The meet-semilattice axioms M1-M5 plus one filter axiom M6 per prop."""
    x, y, z, zp = "x", "y", "z", "z1"
    axioms = [
        ("M1", Forall(x, Rel(x, x))),
        ("M2", Forall(x, Forall(y, Implies(And(Rel(x, y), Rel(y, x)), Eq(x, y))))),
        ("M3", Forall(x, Forall(y, Forall(z, Implies(And(Rel(x, y), Rel(y, z)), Rel(x, z)))))),
        ("M4", Forall(x, Forall(y, Exists(z, fol.conj([
            Rel(z, x), Rel(z, y),
            Forall(zp, Implies(And(Rel(zp, x), Rel(zp, y)), Rel(zp, z)))]))))),
        ("M5", Exists(x, Forall(y, Rel(y, x)))),
    ]
    for p in props:
        axioms.append((f"M6[{p}]", And(
            Exists("w", Pred(p, "w")),
            Forall(x, Forall(y, Forall(z, Implies(
                ismeet(x, y, z, zp),
                iff(And(Pred(p, y), Pred(p, z)), Pred(p, x)))))))))
    return axioms


def _leading_universals(alpha):
    vs = []
    while isinstance(alpha, Forall):
        vs.append(alpha.var)
        alpha = alpha.body
    return vs, alpha


def _witness(s, alpha):
    """Assignment to the leading universal variables falsifying the body."""
    vs, body = _leading_universals(alpha)
    if not vs:
        return None
    memo = {}
    for combo in itertools.product(range(s.n), repeat=len(vs)):
        a = {v: s.carrier[i] for v, i in zip(vs, combo)}
        if not fol_eval_memo(s, a, body, memo):
            return a
    return None


def fol_eval_memo(s, assignment, alpha, memo):
    vs, table = extension(s, alpha, memo)
    return bool(table[tuple(s.idx(assignment[v]) for v in vs)])


def check_fsl(s: FOLStructure) -> Report:
    """Evaluate M1-M6 on ``s``; report the first failing axiom and a witness."""
    for name, axiom in fsl_axioms(s.preds):
        if fol_eval(s, {}, axiom):
            continue
        if name.startswith("M6"):
            nonempty, closure = axiom.left, axiom.right
            if not fol_eval(s, {}, nonempty):
                return failed(name, {}, "predicate is empty")
            return failed(name, _witness(s, closure), "not a filter")
        return failed(name, _witness(s, axiom))
    return passed()
