"""Hot graph kernels: walk reachability and transitive closure.

Every separation, inducing-path and independence-model query funnels into
:func:`reach`.  Two interchangeable backends exist:

* a stack-based state search, jitted with numba when available;
* a vectorized numpy frontier iteration.

``CYCLICFCI_DISABLE_NUMBA=1`` selects the numpy backend.  Both backends take
the same dense boolean matrices and must agree bit for bit.

Walk states are ``(node, kind)`` where ``kind`` records how the walk arrived:

0  the arriving edge has an arrowhead at the node;
1  the arriving edge is ``node -> prev`` with ``prev`` in the same component;
2  the arriving edge is ``node -> prev`` with ``prev`` in another component.

``same[v, w]`` is the "same strongly connected component" relation.  Passing
the identity matrix turns sigma-blocking into d-blocking, since a conditioned
non-collider can then never point inside its own component.
"""

import numpy as np

from ._accel import USE_NUMBA, njit


def _reach_impl(directed, bidirected, same, cond, collider_ok, sources, targets, into_source, into_target):
    n = directed.shape[0]
    seen = np.zeros((3, n), dtype=np.bool_)
    stack_node = np.empty(3 * n + 1, dtype=np.int64)
    stack_kind = np.empty(3 * n + 1, dtype=np.int64)
    top = 0

    for s in range(n):
        if not sources[s]:
            continue
        for w in range(n):
            for step in range(3):
                kind = -1
                if step == 0 and directed[s, w] and not into_source:
                    kind = 0
                elif step == 1 and directed[w, s]:
                    kind = 1 if same[w, s] else 2
                elif step == 2 and bidirected[s, w]:
                    kind = 0
                if kind < 0 or seen[kind, w]:
                    continue
                if targets[w] and (kind == 0 or not into_target):
                    return True
                seen[kind, w] = True
                stack_node[top] = w
                stack_kind[top] = kind
                top += 1

    while top > 0:
        top -= 1
        v = stack_node[top]
        k = stack_kind[top]
        if k == 0:
            head_ok = collider_ok[v]
        else:
            head_ok = (not cond[v]) or k == 1
        tail_any = not cond[v]
        tail_inside = cond[v] and k != 2
        for w in range(n):
            for step in range(3):
                kind = -1
                if step == 0:
                    if directed[v, w] and (tail_any or (tail_inside and same[v, w])):
                        kind = 0
                elif step == 1:
                    if head_ok and directed[w, v]:
                        kind = 1 if same[w, v] else 2
                elif head_ok and bidirected[v, w]:
                    kind = 0
                if kind < 0 or seen[kind, w]:
                    continue
                if targets[w] and (kind == 0 or not into_target):
                    return True
                seen[kind, w] = True
                stack_node[top] = w
                stack_kind[top] = kind
                top += 1
    return False


reach_loop = njit(_reach_impl)


def reach_vectorized(directed, bidirected, same, cond, collider_ok, sources, targets, into_source, into_target):
    """Frontier-at-a-time version of :func:`reach_loop` using boolean matmuls."""
    directed = np.asarray(directed, dtype=bool)
    bidirected = np.asarray(bidirected, dtype=bool)
    same = np.asarray(same, dtype=bool)
    cond = np.asarray(cond, dtype=bool)
    collider_ok = np.asarray(collider_ok, dtype=bool)
    sources = np.asarray(sources, dtype=bool)
    targets = np.asarray(targets, dtype=bool)

    d_in = directed & same
    d_out = directed & ~same

    frontier = np.zeros((3, directed.shape[0]), dtype=bool)
    if not into_source:
        frontier[0] |= sources @ directed
    frontier[0] |= sources @ bidirected
    frontier[1] = d_in @ sources
    frontier[2] = d_out @ sources
    seen = frontier.copy()

    while True:
        hit = seen[0] if into_target else seen.any(axis=0)
        if (hit & targets).any():
            return True
        if not frontier.any():
            return False
        f0, f1, f2 = frontier
        tail_any = (f0 | f1 | f2) & ~cond
        tail_inside = (f0 | f1) & cond
        head_ok = (f0 & collider_ok) | ((f1 | f2) & ~cond) | (f1 & cond)
        nxt = np.empty_like(frontier)
        nxt[0] = (tail_any @ directed) | (tail_inside @ d_in) | (head_ok @ bidirected)
        nxt[1] = d_in @ head_ok
        nxt[2] = d_out @ head_ok
        frontier = nxt & ~seen
        seen |= frontier


def _closure_impl(directed):
    n = directed.shape[0]
    anc = np.zeros((n, n), dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    for i in range(n):
        anc[i, i] = True
        head = 0
        tail = 1
        queue[0] = i
        while head < tail:
            v = queue[head]
            head += 1
            for w in range(n):
                if directed[v, w] and not anc[i, w]:
                    anc[i, w] = True
                    queue[tail] = w
                    tail += 1
    return anc


closure_loop = njit(_closure_impl)


def closure_vectorized(directed):
    """Reflexive transitive closure by repeated boolean squaring."""
    directed = np.asarray(directed, dtype=bool)
    anc = directed | np.eye(directed.shape[0], dtype=bool)
    while True:
        nxt = anc @ anc
        if (nxt == anc).all():
            return anc
        anc = nxt


def _sweep_impl(directed, bidirected, same, anc, i, j):
    # Conditioning sets are bitmasks over all n nodes with bits i and j clear.
    n = directed.shape[0]
    others = np.empty(n - 2, dtype=np.int64)
    c = 0
    for v in range(n):
        if v != i and v != j:
            others[c] = v
            c += 1
    total = 1 << (n - 2)
    out = np.empty(total, dtype=np.int64)
    found = 0
    sources = np.zeros(n, dtype=np.bool_)
    targets = np.zeros(n, dtype=np.bool_)
    sources[i] = True
    targets[j] = True
    cond = np.zeros(n, dtype=np.bool_)
    collider_ok = np.zeros(n, dtype=np.bool_)
    for sub in range(total):
        mask = 0
        for b in range(n - 2):
            on = (sub >> b) & 1
            cond[others[b]] = on == 1
            if on:
                mask |= 1 << others[b]
        for v in range(n):
            hit = False
            for z in range(n):
                if cond[z] and anc[v, z]:
                    hit = True
                    break
            collider_ok[v] = hit
        if not reach_loop(directed, bidirected, same, cond, collider_ok, sources, targets, False, False):
            out[found] = mask
            found += 1
    return out[:found]


sweep_loop = njit(_sweep_impl)


def sweep_vectorized(directed, bidirected, same, anc, i, j):
    """All conditioning masks separating ``i`` and ``j``; numpy backend."""
    n = directed.shape[0]
    others = [v for v in range(n) if v != i and v != j]
    sources = np.zeros(n, dtype=bool)
    targets = np.zeros(n, dtype=bool)
    sources[i] = True
    targets[j] = True
    found = []
    for sub in range(1 << len(others)):
        cond = np.zeros(n, dtype=bool)
        mask = 0
        for b, v in enumerate(others):
            if (sub >> b) & 1:
                cond[v] = True
                mask |= 1 << v
        collider_ok = anc[:, cond].any(axis=1)
        if not reach_vectorized(directed, bidirected, same, cond, collider_ok, sources, targets, False, False):
            found.append(mask)
    return np.asarray(found, dtype=np.int64)


if USE_NUMBA:
    reach, closure, sweep = reach_loop, closure_loop, sweep_loop
else:
    reach, closure, sweep = reach_vectorized, closure_vectorized, sweep_vectorized

BACKEND = "numba" if USE_NUMBA else "numpy"
