"""Finite automaton for two-sided lexicographic constraint languages.

The language ``{w : lo <= sigma^n(w) <= hi for all n}`` is recognized by a
deterministic machine whose state records the tightest pending constraint on
each side.  A pending lower constraint is always some shift of ``lo`` (a
suffix that has matched ``lo`` so far), so it is stored as an index into the
orbit of ``lo``; likewise for ``hi``.  This gives an independent check of the
flip construction and of the kneading-determinant entropy.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _accel
from .errors import DegenerateHole, EmptyLanguage
from .kneading import SurvivorShift
from .symbolic import EpSeq, Order, compare, shift

FREE = -1


class _Side:
    """Transition table for one bound; ``lower`` selects the comparison direction."""

    def __init__(self, bound: EpSeq, lower: bool):
        self.bound = bound
        self.lower = lower
        self.orbit = bound.orbit()
        self.index = {x: i for i, x in enumerate(self.orbit)}
        vacuous = "0" if lower else "1"
        self.vacuous = {i for i, x in enumerate(self.orbit) if not x.pre and x.per == vacuous}

    def _norm(self, i: int) -> int:
        return FREE if i == 0 or i in self.vacuous else i

    def _tighter(self, i: int) -> int:
        """Binding constraint among pending ``i`` and the fresh bound itself."""
        if i == FREE:
            return 0
        o = compare(self.orbit[i], self.bound)
        if self.lower:
            return i if o is Order.GT else 0
        return i if o is Order.LT else 0

    def step(self, i: int, c: str) -> int | None:
        """Next pending constraint after reading ``c``; None means reject."""
        k = self._tighter(i)
        head = self.orbit[k][0]
        if c == head:
            return self._norm(self.index[shift(self.orbit[k], 1)])
        if (c < head) == self.lower:
            return None
        return FREE


@dataclass
class BoundAutomaton:
    lower: EpSeq
    upper: EpSeq
    states: list[tuple[int, int]]
    trans: dict[tuple[int, int], dict[str, tuple[int, int]]]
    live: list[tuple[int, int]]
    start: tuple[int, int] = (FREE, FREE)

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_live(self) -> int:
        return len(self.live)

    def live_transitions(self):
        alive = set(self.live)
        for u in self.live:
            for c, v in sorted(self.trans[u].items()):
                if v in alive:
                    yield u, c, v

    def adjacency(self) -> np.ndarray:
        pos = {s: k for k, s in enumerate(self.live)}
        a = np.zeros((len(self.live), len(self.live)))
        for u, _, v in self.live_transitions():
            a[pos[u], pos[v]] += 1.0
        return a


def build_bounds(lo: EpSeq, hi: EpSeq) -> BoundAutomaton:
    """Automaton for ``{w : lo <= sigma^n(w) <= hi}``."""
    lside, uside = _Side(lo, True), _Side(hi, False)
    start = (FREE, FREE)
    trans: dict[tuple[int, int], dict[str, tuple[int, int]]] = {}
    queue = deque([start])
    seen = {start}
    while queue:
        st = queue.popleft()
        out = {}
        for c in "01":
            i = lside.step(st[0], c)
            j = uside.step(st[1], c)
            if i is None or j is None:
                continue
            nxt = (i, j)
            out[c] = nxt
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        trans[st] = out
    states = sorted(seen)
    # trim states without an infinite continuation
    live = set(states)
    changed = True
    while changed:
        changed = False
        for s in list(live):
            if not any(v in live for v in trans[s].values()):
                live.discard(s)
                changed = True
    return BoundAutomaton(lo, hi, states, trans, sorted(live), start)


def build(sh: SurvivorShift) -> BoundAutomaton:
    if sh.degenerate:
        raise DegenerateHole("cannot build an automaton for a degenerate shift")
    return build_bounds(sh.s, sh.t)


def count_words(aut: BoundAutomaton, n: int) -> int:
    """Number of length-``n`` words extendable to an accepted infinite sequence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    alive = set(aut.live)
    if aut.start not in alive:
        return 0
    ways = {aut.start: 1}
    for _ in range(n):
        nxt: dict[tuple[int, int], int] = {}
        for u, k in ways.items():
            for v in aut.trans[u].values():
                if v in alive:
                    nxt[v] = nxt.get(v, 0) + k
        ways = nxt
    return sum(ways.values())


def entropy_estimate(aut: BoundAutomaton, tol: float = 1e-12) -> float:
    """Log of the spectral radius of the live part (max over strongly connected pieces)."""
    if not aut.live:
        return 0.0
    a = aut.adjacency()
    ncomp, labels = connected_components(csr_matrix(a), directed=True, connection="strong")
    rho = 0.0
    for k in range(ncomp):
        idx = np.flatnonzero(labels == k)
        sub = a[np.ix_(idx, idx)]
        if not sub.any():
            continue
        rho = max(rho, _accel.power_radius(sub, tol=tol))
    return float(np.log(rho)) if rho > 1.0 + 1e-12 else 0.0


def extremal(aut: BoundAutomaton, which: str = "min") -> EpSeq:
    """Lexicographically smallest or largest accepted sequence."""
    out = extremal_from(aut, "", which)
    if out is None:
        raise EmptyLanguage("automaton accepts no infinite sequence")
    return out


def extremal_from(aut: BoundAutomaton, prefix: str, which: str = "min") -> EpSeq | None:
    """Smallest or largest accepted sequence starting with ``prefix``; None if there is none."""
    if which not in ("min", "max"):
        raise ValueError("which must be 'min' or 'max'")
    alive = set(aut.live)
    st = aut.start
    for c in prefix:
        st = aut.trans[st].get(c)
        if st is None:
            return None
    if st not in alive:
        return None
    order = "01" if which == "min" else "10"
    seen: dict[tuple[int, int], int] = {}
    word = []
    while st not in seen:
        seen[st] = len(word)
        for c in order:
            v = aut.trans[st].get(c)
            if v in alive:
                word.append(c)
                st = v
                break
    k = seen[st]
    w = "".join(word)
    return EpSeq(prefix + w[:k], w[k:])


def accepts(aut: BoundAutomaton, w: EpSeq) -> bool:
    st = aut.start
    for c in w.pre:
        st = aut.trans[st].get(c)
        if st is None:
            return False
    seen = set()
    while st not in seen:
        seen.add(st)
        for c in w.per:
            st = aut.trans[st].get(c)
            if st is None:
                return False
    return True


def to_dot(aut: BoundAutomaton) -> str:
    alive = set(aut.live)
    names = {s: f"q{k}" for k, s in enumerate(aut.states)}
    lines = ["digraph BoundAutomaton {", "  rankdir=LR;"]
    for s in aut.states:
        style = "doublecircle" if s == aut.start else "circle"
        color = "" if s in alive else ", color=gray"
        lines.append(f'  {names[s]} [shape={style}, label="{s[0]},{s[1]}"{color}];')
    for s in aut.states:
        for c, v in sorted(aut.trans[s].items()):
            lines.append(f'  {names[s]} -> {names[v]} [label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
