"""Simulations, meet-simulations and meet_omega-simulations between models.

Each relation kind comes with a checker (``is_*``), written as direct
clause-by-clause loops, and a greatest-fixpoint engine (``largest_*``),
written as vectorised synchronous rounds.  The two routes share no code
beyond the model tables, so they cross-check each other in the tests.

Relations are plain frozensets of name tuples:

* simulation:        ``(w, w2)``
* meet-simulation:   ``(w1, w2, w3)``  -- two source states, one target
* meet_omega:        ``(X, w2)`` with ``X`` a frozenset of at most two names
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Model, UndeclaredProposition
from .fol import FOLFormula, free_vars
from .report import Report, failed, passed
from .translation import fol_truth_set, to_structure

KINDS = ("sim", "meet", "meet_omega")


class FreeVariableArity(ValueError):
    pass


def _check_alphabets(m: Model, m2: Model):
    for p in m.props:
        if p not in m2.valuation:
            raise UndeclaredProposition(p)
    for p in m2.props:
        if p not in m.valuation:
            raise UndeclaredProposition(p)


@dataclass(frozen=True, eq=False)
class Fixpoint:
    """Result of a greatest-fixpoint computation.

    ``stages`` maps every *deleted* tuple to the round that removed it:
    0 for tuples failing the local clauses, ``k >= 1`` for tuples whose
    transfer clause failed against the relation left after round ``k - 1``.
    """

    kind: str
    relation: frozenset
    stages: dict
    rounds: int
    mask: np.ndarray = field(repr=False)
    stage_array: np.ndarray = field(repr=False)

    def __contains__(self, item):
        return item in self.relation

    def __len__(self):
        return len(self.relation)


def _refine(init, bad_fn):
    """Delete tuples in synchronous rounds until ``bad_fn`` finds none."""
    stages = np.full(init.shape, -1, dtype=np.int64)
    stages[~init] = 0
    rel = init.copy()
    rnd = 0
    while True:
        bad = bad_fn(rel) & rel
        if not bad.any():
            return rel, stages, rnd
        rnd += 1
        stages[bad] = rnd
        rel &= ~bad


def _i(a):
    return a.astype(np.int64)


# -- L1-simulations ----------------------------------------------------------

def _sim_local(m, m2):
    ok = np.ones((m.n, m2.n), dtype=bool)
    for p in m.props:
        ok &= ~(m.val_masks[p][:, None] & ~m2.val_masks[p][None, :])
    ok[m.top, :] &= np.arange(m2.n) == m2.top
    return ok


def largest_simulation(m: Model, m2: Model) -> Fixpoint:
    """Largest L1-simulation from ``m`` to ``m2`` with deletion stages."""
    _check_alphabets(m, m2)
    D, D2 = _i(m.decompositions), _i(m2.decompositions)

    def bad(S):
        Si = _i(S)
        # ok[v, u, w2]: some v2, u2 with (v,v2), (u,u2) in S and v2 ^ u2 <= w2
        ok = np.einsum("ab,cd,bde->ace", Si, Si, D2, optimize=True) > 0
        return np.einsum("aci,ace->ie", D, _i(~ok), optimize=True) > 0

    rel, stages, rnd = _refine(_sim_local(m, m2), bad)
    E, E2 = m.elements, m2.elements
    return Fixpoint(
        "sim",
        frozenset((E[a], E2[b]) for a, b in np.argwhere(rel)),
        {(E[a], E2[b]): int(stages[a, b]) for a, b in np.argwhere(stages >= 0)},
        rnd, rel, stages,
    )


def is_simulation(S: Iterable[tuple[str, str]], m: Model, m2: Model) -> Report:
    """Check the atom, top and meet-transfer clauses for every pair of ``S``."""
    _check_alphabets(m, m2)
    pairs = sorted({(m.idx(a), m2.idx(b)) for a, b in S})
    succ = {}
    for a, b in pairs:
        succ.setdefault(a, []).append(b)
    E, E2 = m.elements, m2.elements
    decomps = {w: [(v, u) for v in range(m.n) for u in range(m.n) if m.leq[m.meet[v, u], w]]
               for w in range(m.n)}
    cache = {}

    def transfer(v, u, w2):
        key = (v, u, w2)
        if key not in cache:
            cache[key] = any(m2.leq[m2.meet[v2, u2], w2]
                             for v2 in succ.get(v, ()) for u2 in succ.get(u, ()))
        return cache[key]

    for w, w2 in pairs:
        for p in m.props:
            if w in m.valuation[p] and w2 not in m2.valuation[p]:
                return failed("S1", (E[w], E2[w2], p))
        if w == m.top and w2 != m2.top:
            return failed("S2", (E[w], E2[w2]))
    for w, w2 in pairs:
        for v, u in decomps[w]:
            if not transfer(v, u, w2):
                return failed("S3", (E[w], E2[w2], E[v], E[u]))
    return passed()


# -- meet-simulations --------------------------------------------------------

def _meet_local(m, m2):
    ok = np.ones((m.n, m.n, m2.n), dtype=bool)
    for p in m.props:
        v = m.val_masks[p]
        ok &= ~((v[:, None] & v[None, :])[:, :, None] & ~m2.val_masks[p][None, None, :])
    ok[m.top, m.top, :] &= np.arange(m2.n) == m2.top
    return ok


def largest_meet_simulation(m: Model, m2: Model) -> Fixpoint:
    """Largest meet-simulation from ``m`` to ``m2`` with deletion stages."""
    _check_alphabets(m, m2)
    D, D2 = _i(m.decompositions), _i(m2.decompositions)

    def bad(T):
        Ti = _i(T)
        # x[u1, u2, v', w']: some u' with (u1, u2, u') in T and u' ^ v' <= w'
        x = _i(np.einsum("abu,uve->abve", Ti, D2, optimize=True) > 0)
        ok = np.einsum("abve,cdv->abcde", x, Ti, optimize=True) > 0
        return np.einsum("aci,bdj,abcde->ije", D, D, _i(~ok), optimize=True) > 0

    rel, stages, rnd = _refine(_meet_local(m, m2), bad)
    E, E2 = m.elements, m2.elements
    return Fixpoint(
        "meet",
        frozenset((E[a], E[b], E2[c]) for a, b, c in np.argwhere(rel)),
        {(E[a], E[b], E2[c]): int(stages[a, b, c]) for a, b, c in np.argwhere(stages >= 0)},
        rnd, rel, stages,
    )


def is_meet_simulation(T: Iterable[tuple[str, str, str]], m: Model, m2: Model) -> Report:
    _check_alphabets(m, m2)
    triples = sorted({(m.idx(a), m.idx(b), m2.idx(c)) for a, b, c in T})
    image = {}
    for a, b, c in triples:
        image.setdefault((a, b), []).append(c)
    E, E2 = m.elements, m2.elements
    decomps = {w: [(u, v) for u in range(m.n) for v in range(m.n) if m.leq[m.meet[u, v], w]]
               for w in range(m.n)}
    cache = {}

    def transfer(u1, u2, v1, v2, w2):
        key = (u1, u2, v1, v2, w2)
        if key not in cache:
            cache[key] = any(m2.leq[m2.meet[vp, up], w2]
                             for up in image.get((u1, u2), ())
                             for vp in image.get((v1, v2), ()))
        return cache[key]

    for w1, w2, wp in triples:
        for p in m.props:
            val = m.valuation[p]
            if w1 in val and w2 in val and wp not in m2.valuation[p]:
                return failed("M1", (E[w1], E[w2], E2[wp], p))
        if w1 == m.top and w2 == m.top and wp != m2.top:
            return failed("M2", (E[w1], E[w2], E2[wp]))
    for w1, w2, wp in triples:
        for u1, v1 in decomps[w1]:
            for u2, v2 in decomps[w2]:
                if not transfer(u1, u2, v1, v2, wp):
                    return failed("M3", (E[w1], E[w2], E2[wp], E[u1], E[v1], E[u2], E[v2]))
    return passed()


def meet_sim_from_sim(S: Iterable[tuple[str, str]], m: Model) -> frozenset:
    """``T_S``: triples whose first or second component is ``S``-related."""
    S = frozenset(S)
    return frozenset((w1, w2, wp) for (a, wp) in S for w in m.elements
                     for (w1, w2) in ((a, w), (w, a)))


# -- meet_omega-simulations (left sets of size <= 2) -------------------------

def small_subsets(n: int) -> list[tuple[int, ...]]:
    """All subsets of ``range(n)`` with at most two elements, canonical order."""
    return [()] + [(i,) for i in range(n)] + list(itertools.combinations(range(n), 2))


def _omega_tables(m):
    subsets = small_subsets(m.n)
    index = {s: k for k, s in enumerate(subsets)}
    L = len(subsets)
    choices = np.zeros((L, L, L), dtype=bool)
    decomps = [[(u, v) for u in range(m.n) for v in range(m.n) if m.leq[m.meet[u, v], w]]
               for w in range(m.n)]
    for k, X in enumerate(subsets):
        for picks in itertools.product(*(decomps[w] for w in X)):
            us = tuple(sorted({u for u, _ in picks}))
            vs = tuple(sorted({v for _, v in picks}))
            choices[k, index[us], index[vs]] = True
    return subsets, choices


def _omega_local(m, m2, subsets):
    ok = np.ones((len(subsets), m2.n), dtype=bool)
    for k, X in enumerate(subsets):
        for p in m.props:
            if all(w in m.valuation[p] for w in X):
                ok[k] &= m2.val_masks[p]
        if all(w == m.top for w in X):
            ok[k] &= np.arange(m2.n) == m2.top
    return ok


def largest_meet_omega_simulation(m: Model, m2: Model) -> Fixpoint:
    """Largest meet_omega-simulation with left sets of size at most two."""
    _check_alphabets(m, m2)
    subsets, choices = _omega_tables(m)
    C, D2 = _i(choices), _i(m2.decompositions)

    def bad(T):
        Ti = _i(T)
        ok = np.einsum("au,bv,uve->abe", Ti, Ti, D2, optimize=True) > 0
        return np.einsum("xab,abe->xe", C, _i(~ok), optimize=True) > 0

    rel, stages, rnd = _refine(_omega_local(m, m2, subsets), bad)
    E, E2 = m.elements, m2.elements

    def key(k, b):
        return (frozenset(E[i] for i in subsets[k]), E2[b])

    return Fixpoint(
        "meet_omega",
        frozenset(key(k, b) for k, b in np.argwhere(rel)),
        {key(k, b): int(stages[k, b]) for k, b in np.argwhere(stages >= 0)},
        rnd, rel, stages,
    )


def is_meet_omega_simulation(T: Iterable[tuple[Iterable[str], str]], m: Model, m2: Model) -> Report:
    """Check the three clauses for finite left sets (any size is accepted).

    For ``X`` empty the atom and top clauses have vacuous antecedents, so
    ``(set(), w')`` requires ``w'`` to be the top of ``m2``.
    """
    _check_alphabets(m, m2)
    rel = sorted({(tuple(sorted(m.idx(x) for x in X)), m2.idx(b)) for X, b in T})
    image = {}
    for X, b in rel:
        image.setdefault(X, []).append(b)
    E, E2 = m.elements, m2.elements
    decomps = [[(u, v) for u in range(m.n) for v in range(m.n) if m.leq[m.meet[u, v], w]]
               for w in range(m.n)]

    def names(X):
        return frozenset(E[i] for i in X)

    for X, wp in rel:
        for p in m.props:
            if all(w in m.valuation[p] for w in X) and wp not in m2.valuation[p]:
                return failed("M'1", (names(X), E2[wp], p))
        if all(w == m.top for w in X) and wp != m2.top:
            return failed("M'2", (names(X), E2[wp]))
    for X, wp in rel:
        for picks in itertools.product(*(decomps[w] for w in X)):
            us = tuple(sorted({u for u, _ in picks}))
            vs = tuple(sorted({v for _, v in picks}))
            if not any(m2.leq[m2.meet[vp, up], wp]
                       for up in image.get(us, ()) for vp in image.get(vs, ())):
                return failed("M'3", (names(X), E2[wp], names(us), names(vs)))
    return passed()


def meet_to_omega(T: Iterable[tuple[str, str, str]]) -> frozenset:
    """Embed a meet-simulation as ``{({w1, w2}, w')}``."""
    return frozenset((frozenset((a, b)), c) for a, b, c in T)


# -- preservation ------------------------------------------------------------

_ENGINES = {
    "sim": largest_simulation,
    "meet": largest_meet_simulation,
    "meet_omega": largest_meet_omega_simulation,
}


def largest(kind: str, m: Model, m2: Model) -> Fixpoint:
    try:
        engine = _ENGINES[kind.replace("-", "_")]
    except KeyError:
        raise ValueError(f"unknown relation kind {kind!r}; choose from {KINDS}") from None
    return engine(m, m2)


def _sort_key(kind, tup, m, m2):
    if kind == "sim":
        return (m.idx(tup[0]), m2.idx(tup[1]))
    if kind == "meet":
        return (m.idx(tup[0]), m.idx(tup[1]), m2.idx(tup[2]))
    X = sorted(m.idx(x) for x in tup[0])
    return (len(X), X, m2.idx(tup[1]))


def check_preservation(alpha: FOLFormula, pairs: Sequence[tuple[Model, Model]],
                       kind: str = "meet") -> Report:
    """Test ``alpha`` for preservation along the largest relation of ``kind``.

    For every model pair and every related tuple, truth of ``alpha`` at all
    left components must imply truth at the right component.  A failure is
    a genuine counterexample; a pass only covers the supplied models.
    """
    fv = free_vars(alpha)
    if len(fv) != 1:
        raise FreeVariableArity(f"expected exactly one free variable, got {sorted(fv)}")
    (x,) = fv
    kind = kind.replace("-", "_")
    checked = 0
    for k, (m, m2) in enumerate(pairs):
        fp = largest(kind, m, m2)
        a1 = fol_truth_set(to_structure(m), alpha, x)
        a2 = fol_truth_set(to_structure(m2), alpha, x)
        for tup in sorted(fp.relation, key=lambda t: _sort_key(kind, t, m, m2)):
            checked += 1
            if kind == "sim":
                lefts, right = (tup[0],), tup[1]
            elif kind == "meet":
                lefts, right = tup[:2], tup[2]
            else:
                lefts, right = tuple(sorted(tup[0], key=m.idx)), tup[1]
            if all(a1[m.idx(w)] for w in lefts) and not a2[m2.idx(right)]:
                return failed("preservation", tup, f"{kind}: not preserved", pair=k)
    return passed(pairs=len(pairs), tuples=checked)
