"""Finite meet-semilattice models and filter machinery.

A :class:`Model` stores the order as a boolean matrix over element indices
and derives the meet table and top element from it.  Elements are named by
strings at the API boundary; internally everything is an index into
``Model.elements``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np


class ModelError(Exception):
    """Base class for everything raised while building or querying models."""


class ValidationError(ModelError):
    """Raised when a structure violates one of the meet-semilattice axioms."""

    axiom = None

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPoset(ValidationError):
    def __init__(self, axiom, witness):
        super().__init__(f"order violates {axiom}: {witness}", witness)
        self.axiom = axiom


class NoMeet(ValidationError):
    axiom = "M4"

    def __init__(self, a, b):
        super().__init__(f"no greatest lower bound for {a!r} and {b!r}", (a, b))


class NoTop(ValidationError):
    axiom = "M5"

    def __init__(self):
        super().__init__("order has no greatest element")


class NotAFilter(ValidationError):
    axiom = "M6"

    def __init__(self, prop, witness, reason):
        super().__init__(f"valuation of {prop!r} is not a filter: {reason}", witness)
        self.prop = prop
        self.reason = reason


class UnknownElement(ModelError, KeyError):
    def __str__(self):
        return f"unknown element {self.args[0]!r}"


class UndeclaredProposition(ModelError, KeyError):
    def __str__(self):
        return f"undeclared proposition {self.args[0]!r}"


def _readonly(arr):
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Poset:
    """Named elements with a reflexive, antisymmetric, transitive order."""

    elements: tuple[str, ...]
    leq: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "leq", _readonly(np.asarray(self.leq, dtype=bool)))

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and np.array_equal(self.leq, other.leq)
        )

    __hash__ = None

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(a, b)`` with ``a < b`` and nothing in between."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        # b covers a iff a < b and no c with a < c < b
        between = (lt.astype(np.int32) @ lt.astype(np.int32)) > 0
        return [tuple(map(int, e)) for e in np.argwhere(lt & ~between)]


class Model:
    """A finite meet-semilattice with a valuation assigning filters.

    Build instances through :func:`validate_model` (or :func:`load_model`);
    the constructor trusts its arguments.
    """

    def __init__(self, poset: Poset, meet: np.ndarray, top: int,
                 valuation: Mapping[str, Iterable[int]], repairs=()):
        self.poset = poset
        self.meet = _readonly(np.asarray(meet, dtype=np.intp))
        self.top = int(top)
        self.valuation = {p: frozenset(int(i) for i in s) for p, s in valuation.items()}
        self.props = tuple(self.valuation)
        self.repairs = tuple(repairs)
        self.index = {name: i for i, name in enumerate(poset.elements)}

    # structure -------------------------------------------------------------
    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def n(self) -> int:
        return len(self.poset.elements)

    @cached_property
    def decompositions(self) -> np.ndarray:
        """``D[v, u, w]`` is true iff ``meet(v, u) <= w``."""
        return _readonly(self.leq[self.meet])

    @cached_property
    def val_masks(self) -> dict[str, np.ndarray]:
        masks = {}
        for p, s in self.valuation.items():
            m = np.zeros(self.n, dtype=bool)
            m[list(s)] = True
            masks[p] = _readonly(m)
        return masks

    # naming helpers --------------------------------------------------------
    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(name) from None

    def indices(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.idx(n) for n in names)

    def names(self, indices: Iterable[int]) -> frozenset[str]:
        return frozenset(self.elements[i] for i in indices)

    def sorted_names(self, indices: Iterable[int]) -> list[str]:
        return [self.elements[i] for i in sorted(indices)]

    def valuation_of(self, prop: str) -> frozenset[int]:
        try:
            return self.valuation[prop]
        except KeyError:
            raise UndeclaredProposition(prop) from None

    def __eq__(self, other):
        return (
            isinstance(other, Model)
            and self.poset == other.poset
            and self.valuation == other.valuation
        )

    __hash__ = None

    def __repr__(self):
        return f"<Model {len(self.elements)} elements, props={list(self.props)}>"


# -- order helpers -----------------------------------------------------------

def reflexive_transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        leq[a, b] = True
    # Warshall
    for k in range(n):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    return leq


def _check_partial_order(names, leq):
    n = len(names)
    for a in range(n):
        if not leq[a, a]:
            raise NotAPoset("M1", (names[a],))
    for a in range(n):
        for b in range(a + 1, n):
            if leq[a, b] and leq[b, a]:
                raise NotAPoset("M2", (names[a], names[b]))
    for a in range(n):
        for b in range(n):
            if not leq[a, b]:
                continue
            for c in range(n):
                if leq[b, c] and not leq[a, c]:
                    raise NotAPoset("M3", (names[a], names[b], names[c]))


def _derive_meets(names, leq):
    n = len(names)
    meet = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(a, n):
            lower = np.flatnonzero(leq[:, a] & leq[:, b])
            glb = [c for c in lower if leq[lower, c].all()]
            if not glb:
                raise NoMeet(names[a], names[b])
            meet[a, b] = meet[b, a] = glb[0]
    return meet


def _derive_top(leq):
    tops = np.flatnonzero(leq.all(axis=0))
    if len(tops) == 0:
        raise NoTop()
    return int(tops[0])


def _filter_violation(leq, meet, s):
    """Return ``(reason, witness)`` for the first filter failure of index set ``s``."""
    if not s:
        return "empty (filters contain top)", ()
    for a in sorted(s):
        for b in np.flatnonzero(leq[a]):
            if int(b) not in s:
                return "not upward closed", (a, int(b))
    for a in sorted(s):
        for b in sorted(s):
            if int(meet[a, b]) not in s:
                return "not closed under meets", (a, b)
    return None


def _generated_filter(leq, meet, top, s):
    closed = set(s) | {top}
    frontier = list(closed)
    while frontier:
        a = frontier.pop()
        for b in list(closed):
            c = int(meet[a, b])
            if c not in closed:
                closed.add(c)
                frontier.append(c)
    # finitely generated: the meet of everything is the least element
    least = top
    for a in closed:
        least = int(meet[least, a])
    return frozenset(int(b) for b in np.flatnonzero(leq[least]))


def validate_model(elements: Iterable[str], pairs: Iterable[tuple[str, str]],
                   valuation: Mapping[str, Iterable[str]], kind: str = "leq",
                   close_valuations: bool = False) -> Model:
    """Build a :class:`Model` or raise the first violated axiom.

    ``pairs`` are read as order pairs ``a <= b`` (``kind="leq"``) or as Hasse
    cover pairs (``kind="covers"``).  Either way the reflexive pairs are
    implied, and covers are closed transitively before validation.

    With ``close_valuations`` each non-filter valuation is replaced by the
    filter it generates and the change is listed in ``Model.repairs``.
    """
    names = tuple(elements)
    if not names:
        raise ValidationError("model has no elements")
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise ValidationError(f"duplicate element {dup!r}", (dup,))
    index = {n: i for i, n in enumerate(names)}

    def lookup(name):
        try:
            return index[name]
        except KeyError:
            raise UnknownElement(name) from None

    idx_pairs = [(lookup(a), lookup(b)) for a, b in pairs]
    n = len(names)
    if kind == "covers":
        leq = reflexive_transitive_closure(n, idx_pairs)
    elif kind == "leq":
        leq = np.eye(n, dtype=bool)
        for a, b in idx_pairs:
            leq[a, b] = True
    else:
        raise ValueError(f"unknown order kind {kind!r}")

    _check_partial_order(names, leq)
    meet = _derive_meets(names, leq)
    top = _derive_top(leq)

    val = {}
    repairs = []
    for p, members in valuation.items():
        s = frozenset(lookup(x) for x in members)
        bad = _filter_violation(leq, meet, s)
        if bad is not None:
            if not close_valuations:
                reason, witness = bad
                raise NotAFilter(p, tuple(names[i] for i in witness), reason)
            closed = _generated_filter(leq, meet, top, s)
            repairs.append({
                "prop": p,
                "before": [names[i] for i in sorted(s)],
                "after": [names[i] for i in sorted(closed)],
            })
            s = closed
        val[p] = s
    return Model(Poset(names, leq), meet, top, val, repairs)


# -- set operations ----------------------------------------------------------

def meet_of_set(m: Model, xs: Iterable[str]) -> str:
    """Meet of a finite set of elements; the empty meet is top."""
    acc = m.top
    for i in m.indices(xs):
        acc = int(m.meet[acc, i])
    return m.elements[acc]


def is_filter(m: Model, s: Iterable[str]) -> bool:
    """Upward closed, closed under binary meets and nonempty."""
    return _filter_violation(m.leq, m.meet, m.indices(s)) is None


def filter_generated_by(m: Model, s: Iterable[str]) -> frozenset[str]:
    """The least filter containing ``s``."""
    return m.names(_generated_filter(m.leq, m.meet, m.top, m.indices(s)))


def principal_filter(m: Model, a: str) -> frozenset[str]:
    return m.names(np.flatnonzero(m.leq[m.idx(a)]))


# -- JSON model files --------------------------------------------------------

def model_from_dict(data: Mapping, close_valuations: bool = False) -> Model:
    if not isinstance(data, Mapping):
        raise ValueError("model file must contain a JSON object")
    try:
        elements = data["elements"]
        order = data.get("order", {"kind": "leq", "pairs": []})
        kind = order.get("kind", "leq")
        pairs = [tuple(p) for p in order.get("pairs", [])]
        valuation = data.get("valuation", {})
    except (KeyError, AttributeError, TypeError) as exc:
        raise ValueError(f"malformed model object: {exc}") from None
    if any(len(p) != 2 for p in pairs):
        raise ValueError("order pairs must have exactly two entries")
    return validate_model(elements, pairs, valuation, kind=kind,
                          close_valuations=close_valuations)


def model_to_dict(m: Model, kind: str = "covers") -> dict:
    """Canonical form: declaration order for elements, sorted pairs."""
    if kind == "covers":
        pairs = [(m.elements[a], m.elements[b]) for a, b in m.poset.covers()]
    elif kind == "leq":
        pairs = [(m.elements[a], m.elements[b])
                 for a, b in np.argwhere(m.leq) if a != b]
    else:
        raise ValueError(f"unknown order kind {kind!r}")
    return {
        "elements": list(m.elements),
        "order": {"kind": kind, "pairs": [list(p) for p in sorted(pairs)]},
        "valuation": {p: m.sorted_names(m.valuation[p]) for p in m.props},
    }


def load_model(path, close_valuations: bool = False) -> Model:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return model_from_dict(data, close_valuations=close_valuations)


def dump_model(m: Model, kind: str = "covers") -> str:
    return json.dumps(model_to_dict(m, kind), indent=2)
