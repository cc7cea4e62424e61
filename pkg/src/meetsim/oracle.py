"""Brute-force instruments used to cross-check the engines.

Nothing here shares code with the fixpoint engines or the tensor FOL
evaluator; only the model-checking of positive formulas is reused.
"""

from __future__ import annotations

from typing import Iterator, Mapping, Sequence

from .core import Model
from .fol import And as FAnd
from .fol import Eq, Exists, FOLFormula, Forall, Implies, Not, OrC, Pred, Rel
from .formula import BOT, TOP, And, LFormula, Or, Prop
from .semantics import truth_masks
from .translation import FOLStructure, UnboundVariable


def formula_count(n_props: int, depth: int) -> int:
    """Number of formula trees of connective depth at most ``depth``."""
    base = n_props + 2
    count = base
    for _ in range(depth):
        count = base + 2 * count * count
    return count


def _atoms(props):
    return [Prop(p) for p in props] + [TOP, BOT]


def _level(prev, atoms):
    yield from atoms
    for a in prev:
        for b in prev:
            yield And(a, b)
    for a in prev:
        for b in prev:
            yield Or(a, b)


def enumerate_formulas(props: Sequence[str], depth: int,
                       models: Sequence[Model] | None = None) -> Iterator[LFormula]:
    """All formulas over ``props`` with connective depth at most ``depth``.

    Order: atoms (props, then ``top``, ``bot``), then every conjunction of
    two depth-``d-1`` formulas, then every disjunction.

    If ``models`` is given, formulas whose truth sets agree on every model
    with an earlier one are dropped.  Because the truth set of a compound
    formula depends only on the truth sets of its parts, building each
    level from the previous level's representatives reaches every truth-set
    class that the full enumeration reaches.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    atoms = _atoms(props)
    if not models:
        if depth == 0:
            yield from atoms
            return
        prev = list(enumerate_formulas(props, depth - 1))
        yield from _level(prev, atoms)
        return

    memos = [{} for _ in models]

    def key(phi):
        return tuple(truth_masks(mod, phi, memo)[phi].tobytes()
                     for mod, memo in zip(models, memos))

    def dedup(stream):
        seen, reps = set(), []
        for phi in stream:
            k = key(phi)
            if k not in seen:
                seen.add(k)
                reps.append(phi)
        return reps

    reps = dedup(atoms)
    for _ in range(depth):
        reps = dedup(_level(reps, atoms))
    yield from reps


def theory_inclusion_oracle(m: Model, w: str, m2: Model, w2: str, depth: int) -> bool:
    """Every formula of depth at most ``depth`` true at ``w`` holds at ``w2``."""
    i, j = m.idx(w), m2.idx(w2)
    props = list(dict.fromkeys(m.props + m2.props))
    memo1, memo2 = {}, {}
    for phi in enumerate_formulas(props, depth, models=[m, m2]):
        if truth_masks(m, phi, memo1)[phi][i] and not truth_masks(m2, phi, memo2)[phi][j]:
            return False
    return True


def first_distinguishing(m: Model, w: str, m2: Model, w2: str, depth: int) -> LFormula | None:
    """Earliest enumerated formula true at ``w`` and false at ``w2``."""
    i, j = m.idx(w), m2.idx(w2)
    props = list(dict.fromkeys(m.props + m2.props))
    memo1, memo2 = {}, {}
    for phi in enumerate_formulas(props, depth, models=[m, m2]):
        if truth_masks(m, phi, memo1)[phi][i] and not truth_masks(m2, phi, memo2)[phi][j]:
            return phi
    return None


def naive_fol_eval(s: FOLStructure, assignment: Mapping[str, str], alpha: FOLFormula) -> bool:
    """Textbook recursive evaluation, one assignment at a time."""
    a = {v: s.idx(e) for v, e in assignment.items()}

    def val(v, env):
        try:
            return env[v]
        except KeyError:
            raise UnboundVariable(v) from None

    def go(f, env):
        if isinstance(f, Pred):
            return val(f.var, env) in s.preds[f.prop]
        if isinstance(f, Rel):
            return bool(s.rel[val(f.left, env), val(f.right, env)])
        if isinstance(f, Eq):
            return val(f.left, env) == val(f.right, env)
        if isinstance(f, Not):
            return not go(f.body, env)
        if isinstance(f, FAnd):
            return go(f.left, env) and go(f.right, env)
        if isinstance(f, OrC):
            return go(f.left, env) or go(f.right, env)
        if isinstance(f, Implies):
            return (not go(f.left, env)) or go(f.right, env)
        q = any if isinstance(f, Exists) else all
        return q(go(f.body, {**env, f.var: e}) for e in range(s.n))

    return go(alpha, a)
