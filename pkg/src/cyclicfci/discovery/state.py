"""Mutable working graph shared by the skeleton search and the orientation rules."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import OracleInconsistent
from ..graphs import DPAG, Mark

CIRCLE, ARROW, TAIL = int(Mark.CIRCLE), int(Mark.ARROW), int(Mark.TAIL)

_MARK_NAMES = {0: "none", CIRCLE: "circle", ARROW: "arrow", TAIL: "tail"}


@dataclass(frozen=True)
class TraceEvent:
    """One change to the working graph: the edge ``i``-``j`` now carries the given marks.

    Marks are ``0`` when the edge was removed.  ``sepset`` is set for removals.
    """

    rule: str
    i: int
    j: int
    mark_i: int
    mark_j: int
    sepset: Optional[tuple] = None

    def describe(self, names):
        if self.mark_i == 0:
            z = ", ".join(names[v] for v in self.sepset or ())
            return f"{self.rule}: remove {names[self.i]} - {names[self.j]} given {{{z}}}"
        return (
            f"{self.rule}: {names[self.i]} [{_MARK_NAMES[self.mark_i]}, "
            f"{_MARK_NAMES[self.mark_j]}] {names[self.j]}"
        )


@dataclass
class DiscoveryResult:
    dpag: DPAG
    sepsets: dict
    trace: list = field(default_factory=list)

    def sepset(self, i, j):
        return self.sepsets.get(frozenset((i, j)))

    def replay(self):
        """Rebuild the output graph by replaying the trace on the complete circle graph."""
        return replay_trace(self.dpag.names, self.trace)


def replay_trace(names, trace):
    n = len(names)
    m = np.full((n, n), CIRCLE, dtype=np.int8)
    np.fill_diagonal(m, 0)
    for ev in trace:
        m[ev.j, ev.i] = ev.mark_i
        m[ev.i, ev.j] = ev.mark_j
    return DPAG(names, m)


class PagState:
    """Working DPAG: ``m[i, j]`` is the mark at ``j`` on the edge ``i``-``j`` (0 = absent)."""

    def __init__(self, names):
        self.names = tuple(names)
        self.n = len(self.names)
        self.m = np.full((self.n, self.n), CIRCLE, dtype=np.int8)
        np.fill_diagonal(self.m, 0)
        self.sepsets = {}
        self.trace = []

    # -- reading ----------------------------------------------------------------

    def adj(self, i, j):
        return self.m[i, j] != 0

    def mark(self, at, other):
        """Mark at ``at`` on the edge between ``at`` and ``other``."""
        return int(self.m[other, at])

    def neighbors(self, i):
        return [int(v) for v in np.flatnonzero(self.m[i])]

    def directed(self, a, b):
        """``a -> b``."""
        return self.m[b, a] == TAIL and self.m[a, b] == ARROW

    def into(self, a, b):
        """Edge ``a *-> b``."""
        return self.m[a, b] == ARROW

    def pd_edge(self, a, b):
        """The edge ``a``-``b`` is not into ``a`` (usable as a possibly directed step)."""
        return self.m[a, b] != 0 and self.m[b, a] != ARROW and self.m[a, b] != TAIL

    def sepset(self, i, j):
        return self.sepsets.get(frozenset((i, j)))

    def snapshot(self):
        return self.m.copy()

    def to_dpag(self):
        return DPAG(self.names, self.m)

    # -- writing ----------------------------------------------------------------

    def remove(self, i, j, Z, rule="skeleton"):
        self.m[i, j] = self.m[j, i] = 0
        self.sepsets[frozenset((i, j))] = tuple(sorted(Z))
        self.trace.append(TraceEvent(rule, i, j, 0, 0, tuple(sorted(Z))))

    def set_mark(self, at, other, mark, rule):
        """Put ``mark`` at ``at`` on the edge to ``other``; returns whether anything changed.

        Replacing a tail by an arrowhead or vice versa raises OracleInconsistent.
        """
        cur = int(self.m[other, at])
        if cur == 0:
            raise OracleInconsistent(f"{rule}: no edge between {self.names[at]} and {self.names[other]}")
        if cur == mark:
            return False
        if cur != CIRCLE:
            raise OracleInconsistent(
                f"{rule}: conflicting orientation at {self.names[at]} on edge "
                f"{self.names[at]} - {self.names[other]} ({_MARK_NAMES[cur]} vs {_MARK_NAMES[mark]})"
            )
        self.m[other, at] = mark
        self.trace.append(TraceEvent(rule, at, other, mark, int(self.m[at, other])))
        return True

    def orient(self, a, b, mark_a, mark_b, rule):
        """Set both marks of edge ``a``-``b`` (``None`` leaves a mark untouched)."""
        changed = False
        if mark_b is not None:
            changed |= self.set_mark(b, a, mark_b, rule)
        if mark_a is not None:
            changed |= self.set_mark(a, b, mark_a, rule)
        return changed

    def reset_marks(self, rule="reset"):
        """Turn every remaining edge into ``o-o``."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.m[i, j] and (self.m[i, j] != CIRCLE or self.m[j, i] != CIRCLE):
                    self.m[i, j] = self.m[j, i] = CIRCLE
                    self.trace.append(TraceEvent(rule, i, j, CIRCLE, CIRCLE))
