"""Similarity queries and distinguishing-formula synthesis on finite models.

Synthesis follows the deletion stages of the largest simulation.  A pair
deleted at stage 0 fails the atom or top clause and is separated by an atom
or by ``bot``.  A pair ``(w, w')`` deleted at stage ``k`` has a
decomposition ``v ^ u <= w`` such that every ``(v', u')`` with
``v' ^ u' <= w'`` has ``(v, v')`` or ``(u, u')`` deleted earlier; collecting
the witnesses of those earlier deletions into ``Phi`` and ``Psi`` gives the
separating formula ``(/\\ Phi) | (/\\ Psi)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Model
from .formula import BOT, LFormula, Or, Prop, conj, or_depth, size
from .formula import depth as formula_depth
from .oracle import theory_inclusion_oracle
from .report import Report, failed, passed
from .semantics import truth_masks
from .simulation import Fixpoint, largest_simulation


class InternalVerificationFailed(AssertionError):
    """A synthesized witness did not separate its pair; an engine bug."""


@dataclass(frozen=True)
class Witness:
    formula: LFormula
    left: tuple[str, str]
    right: tuple[str, str]
    stage: int

    def to_dict(self) -> dict:
        return {"formula": str(self.formula), "stage": self.stage,
                "left": list(self.left), "right": list(self.right)}


def _rank(phi):
    return (size(phi), str(phi))


class WitnessSynthesizer:
    """Caches the fixpoint and per-pair witnesses for one ordered model pair."""

    def __init__(self, m: Model, m2: Model, fixpoint: Fixpoint | None = None,
                 names=("M", "M'")):
        self.m, self.m2 = m, m2
        self.fp = fixpoint or largest_simulation(m, m2)
        self.names = names
        self._cache = {}
        self._memo1, self._memo2 = {}, {}

    def similar(self, w: str, w2: str) -> bool:
        return bool(self.fp.mask[self.m.idx(w), self.m2.idx(w2)])

    def _true2(self, phi, j):
        return bool(truth_masks(self.m2, phi, self._memo2)[phi][j])

    def _formula(self, a, b):
        if (a, b) in self._cache:
            return self._cache[(a, b)]
        m, m2, stages = self.m, self.m2, self.fp.stage_array
        k = int(stages[a, b])
        assert k >= 0, "pair is similar"
        if k == 0:
            cands = []
            if a == m.top and b != m2.top:
                cands.append(BOT)
            cands += [Prop(p) for p in m.props
                      if a in m.valuation[p] and b not in m2.valuation[p]]
            best = min(cands, key=_rank)
        else:
            # pairs still related when round k started
            alive = (stages < 0) | (stages >= k)
            targets = np.argwhere(m2.decompositions[:, :, b])
            best = None
            for v, u in np.argwhere(m.decompositions[:, :, a]):
                if any(alive[v, vp] and alive[u, up] for vp, up in targets):
                    continue
                phis, psis = [], []
                for vp, up in targets:
                    if any(not self._true2(f, vp) for f in phis) or \
                       any(not self._true2(f, up) for f in psis):
                        continue
                    cands = []
                    if not alive[v, vp]:
                        cands.append((int(stages[v, vp]), *_rank(self._formula(v, vp)), 0, vp))
                    if not alive[u, up]:
                        cands.append((int(stages[u, up]), *_rank(self._formula(u, up)), 1, up))
                    *_, side, c = min(cands)
                    if side == 0:
                        phis.append(self._formula(v, c))
                    else:
                        psis.append(self._formula(u, c))
                phi = Or(conj(sorted(set(phis), key=_rank)), conj(sorted(set(psis), key=_rank)))
                if best is None or _rank(phi) < _rank(best):
                    best = phi
            assert best is not None, "no refuting decomposition for a deleted pair"
        self._cache[(a, b)] = best
        return best

    def witness(self, w: str, w2: str) -> Witness | None:
        a, b = self.m.idx(w), self.m2.idx(w2)
        stage = int(self.fp.stage_array[a, b])
        if stage < 0:
            return None
        phi = self._formula(a, b)
        ok_left = bool(truth_masks(self.m, phi, self._memo1)[phi][a])
        ok_right = not self._true2(phi, b)
        if not (ok_left and ok_right and or_depth(phi) <= stage):
            raise InternalVerificationFailed(
                f"witness {phi} for ({w}, {w2}) at stage {stage}: "
                f"left={ok_left} right-false={ok_right} or_depth={or_depth(phi)}")
        return Witness(phi, (self.names[0], w), (self.names[1], w2), stage)


def similar(m: Model, w: str, m2: Model, w2: str) -> bool:
    """Membership in the largest simulation from ``m`` to ``m2``."""
    fp = largest_simulation(m, m2)
    return bool(fp.mask[m.idx(w), m2.idx(w2)])


def distinguishing_formula(m: Model, w: str, m2: Model, w2: str) -> Witness | None:
    """A verified formula true at ``w`` and false at ``w2``, or None if similar."""
    return WitnessSynthesizer(m, m2).witness(w, w2)


def hm_report(m: Model, m2: Model, depth: int = 3) -> Report:
    """Cross-validate similarity against bounded theory inclusion for all pairs."""
    syn = WitnessSynthesizer(m, m2)
    n_similar = n_witness = 0
    for w in m.elements:
        for w2 in m2.elements:
            if syn.similar(w, w2):
                n_similar += 1
                if not theory_inclusion_oracle(m, w, m2, w2, depth):
                    return failed("discrepancy", (w, w2),
                                  "similar but theory inclusion fails")
            else:
                wit = syn.witness(w, w2)
                n_witness += 1
                if theory_inclusion_oracle(m, w, m2, w2, formula_depth(wit.formula)):
                    return failed("discrepancy", (w, w2),
                                  f"witness {wit.formula} not seen by the oracle")
    return passed(similar=n_similar, witnesses=n_witness)
