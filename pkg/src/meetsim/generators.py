"""Named example models and random model/relation generators."""

from __future__ import annotations

import itertools

import numpy as np

from .core import Model, validate_model


def diamond() -> Model:
    """Four-element diamond ``w <= u, v <= 1`` with ``V(p)={u,1}``, ``V(q)={v,1}``."""
    return validate_model(
        ["w", "u", "v", "1"],
        [("w", "u"), ("w", "v"), ("u", "1"), ("v", "1")],
        {"p": ["u", "1"], "q": ["v", "1"]},
        kind="covers",
    )


def chain(n: int, valuation: dict | None = None, names=None) -> Model:
    """The chain ``0 <= 1 <= ... <= n-1``."""
    names = list(names or (str(i) for i in range(n)))
    covers = list(zip(names, names[1:]))
    return validate_model(names, covers, valuation or {}, kind="covers")


def two_chain() -> Model:
    """``{0 <= 1}`` with ``V(p) = V(q) = {1}``."""
    return chain(2, {"p": ["1"], "q": ["1"]})


def point(props=("p",)) -> Model:
    return validate_model(["1"], [], {p: ["1"] for p in props})


def random_model(rng: np.random.Generator, max_size: int = 6,
                 props=("p", "q"), universe: int = 4) -> Model:
    """A random meet-semilattice with at most ``max_size`` elements.

    The size is drawn uniformly from ``1..max_size``.  Elements are
    intersection-closed families of subsets of a small universe (every
    finite meet-semilattice arises this way); each proposition gets a
    random principal filter.
    """
    full = (1 << universe) - 1
    target = int(rng.integers(1, max_size + 1))
    while True:
        family = {full}
        while len(family) < target:
            family.add(int(rng.integers(0, full + 1)))
            for a, b in itertools.combinations(list(family), 2):
                family.add(a & b)
        if len(family) == target:
            break
    sets = list(family)
    rng.shuffle(sets)
    names = [f"e{i}" for i in range(len(sets))]
    pairs = [(names[i], names[j]) for i, a in enumerate(sets) for j, b in enumerate(sets)
             if i != j and a & b == a]
    valuation = {}
    for p in props:
        g = int(rng.integers(len(sets)))
        valuation[p] = [names[j] for j, b in enumerate(sets) if sets[g] & b == sets[g]]
    return validate_model(names, pairs, valuation, kind="leq")


def random_pair_relation(rng, m: Model, m2: Model, density: float = 0.5) -> frozenset:
    return frozenset((a, b) for a in m.elements for b in m2.elements if rng.random() < density)


def random_subset(rng, items, keep: float) -> frozenset:
    return frozenset(t for t in sorted(items, key=repr) if rng.random() < keep)
