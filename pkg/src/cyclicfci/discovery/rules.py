"""FCI orientation rules for the setting without selection bias.

Notation: ``*`` is any mark, ``a *-> b`` has an arrowhead at ``b``, ``a o-* b``
has a circle at ``a``.  Each rule scans every instance, re-checks its
antecedent against the current marks and returns whether anything changed.
Rule texts follow the complete-FCI formulation (Zhang, 2008).
"""

from .state import ARROW, CIRCLE, TAIL, PagState


def rule0(state: PagState, rule="R0"):
    """R0: for unshielded ``a *-* b *-* c`` with ``b`` not in SepSet(a, c), orient ``a *-> b <-* c``."""
    changed = False
    n = state.n
    for b in range(n):
        nb = state.neighbors(b)
        for x in range(len(nb)):
            for y in range(x + 1, len(nb)):
                a, c = nb[x], nb[y]
                if state.adj(a, c):
                    continue
                sep = state.sepset(a, c)
                if sep is None or b in sep:
                    continue
                changed |= state.set_mark(b, a, ARROW, rule)
                changed |= state.set_mark(b, c, ARROW, rule)
    return changed


def rule1(state: PagState):
    """R1: if ``a *-> b o-* c`` and ``a``, ``c`` non-adjacent, orient ``b -> c``."""
    changed = False
    for b in range(state.n):
        for a in state.neighbors(b):
            if not state.into(a, b):
                continue
            for c in state.neighbors(b):
                if c == a or state.adj(a, c) or state.mark(b, c) != CIRCLE:
                    continue
                changed |= state.orient(b, c, TAIL, ARROW, "R1")
    return changed


def rule2(state: PagState):
    """R2: if ``a -> b *-> c`` or ``a *-> b -> c``, and ``a *-o c``, orient ``a *-> c``."""
    changed = False
    for a in range(state.n):
        for c in state.neighbors(a):
            if state.mark(c, a) != CIRCLE:
                continue
            for b in state.neighbors(a):
                if b == c or not state.adj(b, c):
                    continue
                if (state.directed(a, b) and state.into(b, c)) or (state.into(a, b) and state.directed(b, c)):
                    changed |= state.set_mark(c, a, ARROW, "R2")
                    break
    return changed


def rule3(state: PagState):
    """R3: if ``a *-> b <-* c``, ``a *-o d o-* c``, ``a``, ``c`` non-adjacent and ``d *-o b``, orient ``d *-> b``."""
    changed = False
    for b in range(state.n):
        for d in state.neighbors(b):
            if state.mark(b, d) != CIRCLE:
                continue
            cands = [
                a
                for a in state.neighbors(b)
                if a != d and state.into(a, b) and state.adj(a, d) and state.mark(d, a) == CIRCLE
            ]
            hit = False
            for x in range(len(cands)):
                for y in range(x + 1, len(cands)):
                    if not state.adj(cands[x], cands[y]):
                        hit = True
                        break
                if hit:
                    break
            if hit:
                changed |= state.set_mark(b, d, ARROW, "R3")
    return changed


def discriminating_path(state: PagState, b, c):
    """Shortest discriminating path ``<x, ..., a, b, c>`` for ``b``; returns it or None.

    Every node strictly between ``x`` and ``b`` is a collider on the path and a
    parent of ``c``; ``x`` is not adjacent to ``c``.
    """
    # breadth-first over partial paths grown backwards from b
    frontier = []
    for a in state.neighbors(b):
        if a != c and state.into(b, a) and state.directed(a, c):
            frontier.append((a, b))
    while frontier:
        nxt = []
        for path in frontier:
            head = path[0]
            for x in state.neighbors(head):
                if x == c or x in path or not state.into(x, head):
                    continue
                if not state.adj(x, c):
                    return (x,) + path + (c,)
                # x becomes an inner collider: arrowhead at x from head is required
                if state.directed(x, c) and state.into(head, x):
                    nxt.append((x,) + path)
        frontier = nxt
    return None


def rule4(state: PagState):
    """R4: discriminating path ``<x, ..., a, b, c>`` with ``b o-* c``.

    If ``b`` is in SepSet(x, c) orient ``b -> c`` (R4a), otherwise ``a <-> b <-> c`` (R4b).
    """
    changed = False
    for b in range(state.n):
        for c in state.neighbors(b):
            if state.mark(b, c) != CIRCLE:
                continue
            path = discriminating_path(state, b, c)
            if path is None:
                continue
            x, a = path[0], path[-3]
            sep = state.sepset(x, c) or ()
            if b in sep:
                changed |= state.orient(b, c, TAIL, ARROW, "R4a")
            else:
                changed |= state.orient(a, b, None, ARROW, "R4b")
                changed |= state.orient(b, c, ARROW, ARROW, "R4b")
    return changed


def rule8(state: PagState):
    """R8 (no selection bias): if ``a -> b -> c`` and ``a o-> c``, orient ``a -> c``."""
    changed = False
    for a in range(state.n):
        for c in state.neighbors(a):
            if state.mark(a, c) != CIRCLE or not state.into(a, c):
                continue
            for b in state.neighbors(a):
                if b != c and state.directed(a, b) and state.directed(b, c):
                    changed |= state.set_mark(a, c, TAIL, "R8a")
                    break
    return changed


def uncovered_pd_path_exists(state: PagState, prev, cur, target, visited):
    """Extend the uncovered possibly directed path ending ``prev, cur`` to ``target``."""
    if cur == target:
        return True
    for nxt in state.neighbors(cur):
        if nxt in visited or not state.pd_edge(cur, nxt) or state.adj(prev, nxt):
            continue
        visited.add(nxt)
        if uncovered_pd_path_exists(state, cur, nxt, target, visited):
            return True
        visited.discard(nxt)
    return False


def rule9(state: PagState):
    """R9: if ``a o-> c`` and an uncovered p.d. path ``<a, b, d, ..., c>`` has ``b``, ``c`` non-adjacent, orient ``a -> c``."""
    changed = False
    for a in range(state.n):
        for c in state.neighbors(a):
            if state.mark(a, c) != CIRCLE or not state.into(a, c):
                continue
            for b in state.neighbors(a):
                if b == c or state.adj(b, c) or not state.pd_edge(a, b):
                    continue
                if uncovered_pd_path_exists(state, a, b, c, {a, b}):
                    changed |= state.set_mark(a, c, TAIL, "R9")
                    break
    return changed


def _first_steps(state: PagState, a, target, avoid):
    """Second nodes of uncovered p.d. paths from ``a`` to ``target`` that avoid ``avoid``."""
    out = set()
    for m in state.neighbors(a):
        if m == avoid or not state.pd_edge(a, m):
            continue
        if m == target or uncovered_pd_path_exists(state, a, m, target, {a, m, avoid}):
            out.add(m)
    return out


def rule10(state: PagState):
    """R10: ``a o-> c``, ``b -> c <- d``, uncovered p.d. paths from ``a`` to ``b`` and to ``d``
    whose second nodes are distinct and non-adjacent: orient ``a -> c``."""
    changed = False
    for a in range(state.n):
        for c in state.neighbors(a):
            if state.mark(a, c) != CIRCLE or not state.into(a, c):
                continue
            parents = [u for u in state.neighbors(c) if u != a and state.directed(u, c)]
            if len(parents) < 2:
                continue
            steps = {u: _first_steps(state, a, u, c) for u in parents}
            fired = False
            for x in range(len(parents)):
                for y in range(x + 1, len(parents)):
                    for mu in steps[parents[x]]:
                        for om in steps[parents[y]]:
                            if mu != om and not state.adj(mu, om):
                                fired = True
                                break
                        if fired:
                            break
                    if fired:
                        break
                if fired:
                    break
            if fired:
                changed |= state.set_mark(a, c, TAIL, "R10")
    return changed


ARROWHEAD_RULES = (rule1, rule2, rule3, rule4)


def run_arrowhead_stage(state):
    """R1-R4 round-robin until nothing changes."""
    changed_any = False
    while True:
        changed = False
        for rule in ARROWHEAD_RULES:
            changed |= rule(state)
        if not changed:
            return changed_any
        changed_any = True


def run_tail_stage(state):
    """All R9 instances, then R8a/R10 until nothing changes."""
    changed_any = rule9(state)
    while True:
        changed = rule8(state)
        changed |= rule10(state)
        if not changed:
            return changed_any
        changed_any = True


def orient_to_fixpoint(state):
    """Alternate the arrowhead and tail stages until no rule fires."""
    while True:
        a = run_arrowhead_stage(state)
        t = run_tail_stage(state)
        if not a and not t:
            return


def any_rule_fires(state):
    """Post-hoc check on a copy: would any rule still change the graph?"""
    probe = PagState(state.names)
    probe.m = state.m.copy()
    probe.sepsets = state.sepsets
    for rule in (*ARROWHEAD_RULES, rule8, rule9, rule10):
        if rule(probe):
            return True
    return False
