"""Model checking of positive formulae over meet-semilattice models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .core import Model, UndeclaredProposition, UnknownElement
from .formula import And, Bot, LFormula, Or, Prop, Top, subformulas
from .report import Report, failed, passed


@dataclass(frozen=True)
class TruthSet:
    formula: LFormula
    members: frozenset[str]


def truth_masks(m: Model, phi: LFormula, memo: dict | None = None) -> dict:
    """Truth-set masks for every subformula of ``phi``, keyed by subformula.

    A disjunction holds at ``w`` iff some ``u`` in the left set and ``v`` in
    the right set have ``meet(u, v) <= w``.  Pass the same ``memo`` across
    calls to share work between formulas on one model.
    """
    memo = {} if memo is None else memo
    for node in subformulas(phi):
        if node in memo:
            continue
        if isinstance(node, Prop):
            if node.name not in m.val_masks:
                raise UndeclaredProposition(node.name)
            mask = m.val_masks[node.name]
        elif isinstance(node, Top):
            mask = np.ones(m.n, dtype=bool)
        elif isinstance(node, Bot):
            mask = np.zeros(m.n, dtype=bool)
            mask[m.top] = True
        elif isinstance(node, And):
            mask = memo[node.left] & memo[node.right]
        else:
            left, right = memo[node.left], memo[node.right]
            # D[u, v, w] restricted to u in left, v in right
            mask = m.decompositions[left][:, right].any(axis=(0, 1))
        memo[node] = mask
    return memo


def truth_mask(m: Model, phi: LFormula, memo: dict | None = None) -> np.ndarray:
    return truth_masks(m, phi, memo)[phi]


def satisfies(m: Model, w: str, phi: LFormula) -> bool:
    i = m.idx(w)
    return bool(truth_mask(m, phi)[i])


def truth_set(m: Model, phi: LFormula) -> TruthSet:
    return TruthSet(phi, m.names(np.flatnonzero(truth_mask(m, phi))))


def check_l1_morphism(f: Mapping[str, str], src: Model, dst: Model) -> Report:
    """Check the four morphism clauses in order; report the first failure.

    Clauses: ``meets`` (finite meets incl. top preserved), ``top-reflect``
    (``f(w)`` is top iff ``w`` is), ``back`` (meet-decompositions below
    ``f(w)`` lift to decompositions below ``w``) and ``valuation``
    (``V(p) = f^-1(V'(p))``).
    """
    missing = [w for w in src.elements if w not in f]
    if missing:
        raise UnknownElement(missing[0])
    fi = np.array([dst.idx(f[w]) for w in src.elements], dtype=np.intp)
    S, D = src.elements, dst.elements

    if fi[src.top] != dst.top:
        return failed("meets", (S[src.top],), "top not preserved")
    for a in range(src.n):
        for b in range(a, src.n):
            lhs = fi[src.meet[a, b]]
            rhs = dst.meet[fi[a], fi[b]]
            if lhs != rhs:
                return failed("meets", (S[a], S[b]),
                              f"f({S[a]} ^ {S[b]}) = {D[lhs]} but f({S[a]}) ^ f({S[b]}) = {D[rhs]}")

    for w in range(src.n):
        if (fi[w] == dst.top) != (w == src.top):
            return failed("top-reflect", (S[w],), f"f({S[w]}) = {D[fi[w]]}")

    # u' ^ v' <= f(w)  ==>  exists u, v: u' <= f(u), v' <= f(v), u ^ v <= w
    above = dst.leq[:, fi]  # above[x', u] : x' <= f(u)
    for w in range(src.n):
        decomp = src.decompositions[:, :, w]
        for up in range(dst.n):
            for vp in range(up, dst.n):
                if not dst.decompositions[up, vp, fi[w]]:
                    continue
                ok = (above[up][:, None] & above[vp][None, :] & decomp).any()
                if not ok:
                    return failed("back", (S[w], D[up], D[vp]),
                                  f"{D[up]} ^ {D[vp]} <= f({S[w]}) has no preimage decomposition")

    for p in src.props:
        if p not in dst.valuation:
            return failed("valuation", (p,), f"{p!r} undeclared in target")
        pre = frozenset(int(i) for i in np.flatnonzero(dst.val_masks[p][fi]))
        if pre != src.valuation[p]:
            diff = sorted(pre ^ src.valuation[p])
            return failed("valuation", (p, S[diff[0]]),
                          f"f^-1(V'({p})) = {src.sorted_names(pre)} != V({p}) = {src.sorted_names(src.valuation[p])}")
    return passed()
