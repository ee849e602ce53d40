"""PC with Meek's rules; the CPDAG is returned as a DPAG (undirected edges become o-o)."""

import numpy as np

from ..errors import OracleInconsistent
from ..graphs import DPAG
from .fci import resolve_universe
from .skeleton import adjacency_search
from .state import CIRCLE, DiscoveryResult, PagState, TraceEvent, ARROW, TAIL
from .validate import check_output


class _Cpdag:
    """``und[a, b]`` for ``a - b``; ``dir[a, b]`` for ``a -> b``."""

    def __init__(self, skeleton, trace):
        self.und = skeleton.copy()
        self.dir = np.zeros_like(skeleton)
        self.trace = trace

    def adj(self, a, b):
        return self.und[a, b] or self.dir[a, b] or self.dir[b, a]

    def orient(self, a, b, rule):
        if self.dir[a, b]:
            return False
        if not self.und[a, b]:
            raise OracleInconsistent(f"{rule}: cannot orient an edge that is already directed the other way")
        self.und[a, b] = self.und[b, a] = False
        self.dir[a, b] = True
        self.trace.append(TraceEvent(rule, a, b, TAIL, ARROW))
        return True


def _meek_r1(g, n):
    changed = False
    for b in range(n):
        for a in np.flatnonzero(g.dir[:, b]):
            for c in np.flatnonzero(g.und[b]):
                if c != a and not g.adj(a, c):
                    changed |= g.orient(b, int(c), "M1")
    return changed


def _meek_r2(g, n):
    changed = False
    for a in range(n):
        for c in np.flatnonzero(g.und[a]):
            if np.any(g.dir[a] & g.dir[:, c]):
                changed |= g.orient(a, int(c), "M2")
    return changed


def _meek_r3(g, n):
    changed = False
    for a in range(n):
        for b in np.flatnonzero(g.und[a]):
            cands = [int(c) for c in np.flatnonzero(g.und[a] & g.dir[:, b]) if c != b]
            if any(not g.adj(c, d) for x, c in enumerate(cands) for d in cands[x + 1 :]):
                changed |= g.orient(a, int(b), "M3")
    return changed


def _meek_r4(g, n):
    changed = False
    for a in range(n):
        for b in np.flatnonzero(g.und[a]):
            b = int(b)
            for d in np.flatnonzero(g.und[a] & g.dir[:, b]):
                for c in np.flatnonzero(g.dir[:, d]):
                    if c != a and c != b and g.adj(a, c) and not g.adj(c, b):
                        changed |= g.orient(a, b, "M4")
                        break
    return changed


def pc_meek(oracle, universe=None) -> DiscoveryResult:
    """PC skeleton, unshielded colliders, Meek rules R1-R4; CPDAG as a DPAG."""
    names = resolve_universe(oracle, universe)
    state = PagState(names)
    adjacency_search(state, oracle)
    n = state.n
    g = _Cpdag(state.m != 0, state.trace)

    for b in range(n):
        nb = [int(v) for v in np.flatnonzero(g.und[b] | g.dir[b] | g.dir[:, b])]
        for x in range(len(nb)):
            for y in range(x + 1, len(nb)):
                a, c = nb[x], nb[y]
                if g.adj(a, c):
                    continue
                sep = state.sepset(a, c)
                if sep is not None and b not in sep:
                    g.orient(a, b, "R0")
                    g.orient(c, b, "R0")
    while True:
        changed = _meek_r1(g, n)
        changed |= _meek_r2(g, n)
        changed |= _meek_r3(g, n)
        changed |= _meek_r4(g, n)
        if not changed:
            break

    m = np.zeros((n, n), dtype=np.int8)
    m[g.und] = CIRCLE
    for a, b in zip(*np.nonzero(g.dir)):
        m[a, b] = ARROW
        m[b, a] = TAIL
    dpag = DPAG(names, m)
    result = DiscoveryResult(dpag, dict(state.sepsets), list(g.trace))
    check_output(dpag, "pc")
    return result
