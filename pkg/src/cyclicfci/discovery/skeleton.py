"""Adjacency search and the Possible-D-SEP refinement."""

from collections import deque
from itertools import combinations

from .state import ARROW, PagState


def _candidate_sets(pool_a, pool_b, size):
    """Subsets of size ``size`` of either pool, de-duplicated, in lexicographic order."""
    sets = set(combinations(sorted(pool_a), size)) | set(combinations(sorted(pool_b), size))
    return sorted(sets)


def adjacency_search(state: PagState, oracle, fixed=frozenset()):
    """Remove edges between separable pairs, testing conditioning sets of growing size.

    Sets are drawn from the adjacencies frozen at the start of each size level
    (order independent), in lexicographic order; the first separating set found
    is recorded.  Pairs in ``fixed`` are never tested.
    """
    n = state.n
    size = 0
    while True:
        adjacency = [set(state.neighbors(v)) for v in range(n)]
        any_testable = False
        for i in range(n):
            for j in range(i + 1, n):
                if not state.adj(i, j) or frozenset((i, j)) in fixed:
                    continue
                pool_i = adjacency[i] - {j}
                pool_j = adjacency[j] - {i}
                if len(pool_i) < size and len(pool_j) < size:
                    continue
                any_testable = True
                for Z in _candidate_sets(pool_i, pool_j, size):
                    if oracle.query(i, j, Z):
                        state.remove(i, j, Z, "skeleton")
                        break
        if not any_testable:
            return
        size += 1


def possible_d_sep(state: PagState, i):
    """Nodes reachable from ``i`` along paths whose every inner triple is a collider or a triangle.

    Searched over directed edge states ``(prev, cur)``, which may include a few
    extra nodes compared to simple paths; a larger set only adds valid tests.
    """
    found = set()
    seen = set()
    queue = deque()
    for v in state.neighbors(i):
        found.add(v)
        seen.add((i, v))
        queue.append((i, v))
    while queue:
        a, b = queue.popleft()
        for c in state.neighbors(b):
            if c == a or c == i or (b, c) in seen:
                continue
            collider = state.m[a, b] == ARROW and state.m[c, b] == ARROW
            if collider or state.adj(a, c):
                seen.add((b, c))
                found.add(c)
                queue.append((b, c))
    found.discard(i)
    return found


def possible_d_sep_stage(state: PagState, oracle, fixed=frozenset()):
    """Re-test every remaining edge against subsets of the Possible-D-SEP sets."""
    n = state.n
    pds = [possible_d_sep(state, v) for v in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if not state.adj(i, j) or frozenset((i, j)) in fixed:
                continue
            pool_i = pds[i] - {i, j}
            pool_j = pds[j] - {i, j}
            done = False
            for size in range(0, max(len(pool_i), len(pool_j)) + 1):
                for Z in _candidate_sets(pool_i, pool_j, size):
                    if oracle.query(i, j, Z):
                        state.remove(i, j, Z, "pds")
                        done = True
                        break
                if done:
                    break
