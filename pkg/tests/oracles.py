"""Pointwise reference implementations used only by the tests."""

from meetsim.formula import And, Bot, Or, Prop, Top


def pairwise_meet(m, a, b):
    """Greatest lower bound found by scanning all elements."""
    lower = [c for c in range(m.n) if m.leq[c, a] and m.leq[c, b]]
    (glb,) = [c for c in lower if all(m.leq[d, c] for d in lower)]
    return glb


def closure_filter(m, s):
    """Least filter containing s: add top, close under meets and upward, repeat."""
    cur = set(s) | {m.top}
    while True:
        nxt = set(cur)
        nxt |= {pairwise_meet(m, a, b) for a in cur for b in cur}
        nxt |= {b for a in cur for b in range(m.n) if m.leq[a, b]}
        if nxt == cur:
            return cur
        cur = nxt


def naive_satisfies(m, w, phi, memo=None):
    """Satisfaction clause by clause, quantifying over element pairs."""
    memo = {} if memo is None else memo
    key = (w, phi)
    if key not in memo:
        memo[key] = _naive(m, w, phi, memo)
    return memo[key]


def _naive(m, w, phi, memo):
    if isinstance(phi, Prop):
        return w in m.valuation[phi.name]
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return w == m.top
    if isinstance(phi, And):
        return naive_satisfies(m, w, phi.left, memo) and naive_satisfies(m, w, phi.right, memo)
    assert isinstance(phi, Or)
    return any(
        m.leq[pairwise_meet(m, u, v), w]
        and naive_satisfies(m, u, phi.left, memo)
        and naive_satisfies(m, v, phi.right, memo)
        for u in range(m.n) for v in range(m.n)
    )
