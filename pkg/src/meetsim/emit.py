"""Render FOL formulas as plain text, TPTP FOF or SMT-LIB 2.

TPTP and SMT-LIB output encode the problem "the axioms entail the
universal closure of the formula":

* TPTP: one ``fof(..., axiom, ...)`` per axiom and a ``conjecture`` that
  universally quantifies the free variables.
* SMT-LIB: a sort ``S``, ``R`` and ``P_p`` as uninterpreted predicates,
  free variables as constants, the axioms asserted and the *negated*
  formula asserted; ``unsat`` means the entailment holds.
"""

from __future__ import annotations

from .fol import (And, Eq, Exists, FOLFormula, Forall, Implies, Not, OrC, Pred,
                  Rel, free_vars, predicates, to_text)
from .translation import fsl_axioms

FORMATS = ("plain", "tptp", "smtlib")


def _tptp_var(v):
    return v[0].upper() + v[1:]


def _tptp_pred(p):
    return "p_" + p


def tptp_formula(alpha: FOLFormula) -> str:
    if isinstance(alpha, Pred):
        return f"{_tptp_pred(alpha.prop)}({_tptp_var(alpha.var)})"
    if isinstance(alpha, Rel):
        return f"r({_tptp_var(alpha.left)},{_tptp_var(alpha.right)})"
    if isinstance(alpha, Eq):
        return f"{_tptp_var(alpha.left)} = {_tptp_var(alpha.right)}"
    if isinstance(alpha, Not):
        return f"~ ({tptp_formula(alpha.body)})"
    if isinstance(alpha, (And, OrC, Implies)):
        op = {And: "&", OrC: "|", Implies: "=>"}[type(alpha)]
        return f"({tptp_formula(alpha.left)} {op} {tptp_formula(alpha.right)})"
    q = "?" if isinstance(alpha, Exists) else "!"
    return f"({q}[{_tptp_var(alpha.var)}] : {tptp_formula(alpha.body)})"


def smt_formula(alpha: FOLFormula) -> str:
    if isinstance(alpha, Pred):
        return f"(P_{alpha.prop} {alpha.var})"
    if isinstance(alpha, Rel):
        return f"(R {alpha.left} {alpha.right})"
    if isinstance(alpha, Eq):
        return f"(= {alpha.left} {alpha.right})"
    if isinstance(alpha, Not):
        return f"(not {smt_formula(alpha.body)})"
    if isinstance(alpha, (And, OrC, Implies)):
        op = {And: "and", OrC: "or", Implies: "=>"}[type(alpha)]
        return f"({op} {smt_formula(alpha.left)} {smt_formula(alpha.right)})"
    q = "exists" if isinstance(alpha, Exists) else "forall"
    return f"({q} (({alpha.var} S)) {smt_formula(alpha.body)})"


def emit(alpha: FOLFormula, fmt: str = "plain", axioms: bool = False,
         props=None, name: str = "goal") -> str:
    """Render ``alpha``; with ``axioms`` the FSL axioms are prepended.

    ``props`` lists the predicates that get a filter axiom; by default
    those occurring in ``alpha``.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
    used = predicates(alpha)
    props = used if props is None else list(props)
    ax = fsl_axioms(props) if axioms else []
    declared = props + [p for p in used if p not in props]
    free = sorted(free_vars(alpha))

    if fmt == "plain":
        lines = [f"% {n}: {to_text(a)}" for n, a in ax]
        lines.append(to_text(alpha))
        return "\n".join(lines) + "\n"

    if fmt == "tptp":
        lines = []
        for n, a in ax:
            label = n.lower().replace("[", "_").replace("]", "")
            lines.append(f"fof({label}, axiom, {tptp_formula(a)}).")
        body = tptp_formula(alpha)
        if free:
            body = f"![{','.join(_tptp_var(v) for v in free)}] : {body}"
        lines.append(f"fof({name}, conjecture, {body}).")
        return "\n".join(lines) + "\n"

    lines = ["(set-logic UF)", "(declare-sort S 0)", "(declare-fun R (S S) Bool)"]
    for p in declared:
        lines.append(f"(declare-fun P_{p} (S) Bool)")
    for v in free:
        lines.append(f"(declare-const {v} S)")
    for n, a in ax:
        lines.append(f"(assert (! {smt_formula(a)} :named {n.replace('[', '_').replace(']', '')}))")
    lines.append(f"(assert (not {smt_formula(alpha)}))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
