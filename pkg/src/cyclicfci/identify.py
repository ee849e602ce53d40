"""Causal features that can be read off a DPAG.

Every criterion here is sufficient, not necessary: a ``False`` answer means
"not identified", never "identified as false".
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import ChordalityViolation, EdgeNotDirected, PairNotEligible, UniverseMismatch
from .graphs import DMAG, DMG, DPAG, Mark
from .separation import exists_inducing_path

ARROW, CIRCLE, TAIL = int(Mark.ARROW), int(Mark.CIRCLE), int(Mark.TAIL)

CLAIM_KINDS = (
    "ancestor",
    "non_ancestor",
    "unconfounded",
    "direct_cause",
    "non_direct_cause",
    "non_cycle",
    "direct_target",
    "non_target",
)


def _dpag(P, attested, flag):
    """Unwrap a DiscoveryResult; bare DPAGs need an explicit attestation."""
    dpag = getattr(P, "dpag", None)
    if dpag is not None:
        return dpag
    if not isinstance(P, DPAG):
        raise TypeError(f"expected a DPAG or DiscoveryResult, got {type(P).__name__}")
    if attested is False:
        raise ValueError(f"this criterion needs a discovery output; pass a DiscoveryResult or {flag}=True")
    return P


def _as_dpag(P):
    return getattr(P, "dpag", P)


# -- containment ---------------------------------------------------------------


def containment_violations(P, G: DMG):
    """Pairs breaking the containment clauses, as ``(clause, i, j)`` tuples."""
    P = _as_dpag(P)
    if P.names != G.names:
        raise UniverseMismatch("DPAG and DMG must share the same node universe")
    anc = G.anc_matrix
    out = []
    for i, j in combinations(range(G.n), 2):
        if P.adjacent(i, j) != exists_inducing_path(G, i, j):
            out.append(("adjacency", i, j))
    m = P.marks
    for i in range(P.n):
        for j in range(P.n):
            if m[i, j] == ARROW and anc[j, i]:
                out.append(("arrowhead", i, j))
            if m[i, j] == ARROW and m[j, i] == TAIL and not anc[i, j]:
                out.append(("tail", i, j))
    return out


def contains(P, G: DMG) -> bool:
    """Whether DPAG ``P`` contains DMG ``G``.

    Adjacency in ``P`` must match inducing paths in ``G``; an arrowhead at ``j``
    on ``i *-> j`` needs ``j`` not an ancestor of ``i``; ``i -> j`` needs ``i``
    an ancestor of ``j``.
    """
    return not containment_violations(P, G)


# -- possibly directed paths ---------------------------------------------------


def _pd(m, a, b):
    """Edge ``a``-``b`` exists and is not into ``a``."""
    return m[a, b] != 0 and m[b, a] != ARROW


def pd_reachable(P, i, skip_edge=None, avoid=()):
    """Nodes reachable from ``i`` along possibly directed paths."""
    P = _as_dpag(P)
    m = P.marks
    avoid = set(avoid)
    seen = {i}
    queue = deque([i])
    while queue:
        v = queue.popleft()
        for w in np.flatnonzero(m[v]):
            w = int(w)
            if w in seen or w in avoid or (v, w) == skip_edge:
                continue
            if _pd(m, v, w):
                seen.add(w)
                queue.append(w)
    return seen


def uncovered_pd_paths(P, i, j, limit=None):
    """Uncovered possibly directed paths from ``i`` to ``j`` (depth-first, neighbours ascending)."""
    P = _as_dpag(P)
    m = P.marks
    out = []

    def extend(path):
        if limit is not None and len(out) >= limit:
            return
        cur = path[-1]
        if cur == j:
            out.append(tuple(path))
            return
        for w in np.flatnonzero(m[cur]):
            w = int(w)
            if w in path or not _pd(m, cur, w):
                continue
            if len(path) >= 2 and m[path[-2], w] != 0:
                continue
            path.append(w)
            extend(path)
            path.pop()

    extend([i])
    return out


def _directed_path(P, i, j):
    m = P.marks
    prev = {i: None}
    queue = deque([i])
    while queue:
        v = queue.popleft()
        if v == j:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return tuple(reversed(path))
        for w in np.flatnonzero(m[v] == ARROW):
            w = int(w)
            if m[w, v] == TAIL and w not in prev:
                prev[w] = v
                queue.append(w)
    return None


# -- ancestors -----------------------------------------------------------------


def ancestor_witness(P, i, j, r0_closed=False):
    """Witness that ``i`` is an ancestor of ``j``, or None.

    Either a directed path, or two uncovered possibly directed paths from
    ``i`` to ``j`` whose second nodes are distinct and non-adjacent.  Needs all
    unshielded triples oriented by R0, hence the attestation for bare DPAGs.
    """
    P = _dpag(P, r0_closed, "r0_closed")
    i, j = P.index(i), P.index(j)
    if i == j:
        raise ValueError("ancestor queries need two distinct nodes")
    path = _directed_path(P, i, j)
    if path is not None:
        return (path,)
    by_second = {}
    for p in uncovered_pd_paths(P, i, j):
        by_second.setdefault(p[1], p)
    seconds = sorted(by_second)
    for u, v in combinations(seconds, 2):
        if not P.adjacent(u, v):
            return (by_second[u], by_second[v])
    return None


def identified_ancestor(P, i, j, r0_closed=False) -> bool:
    return ancestor_witness(P, i, j, r0_closed) is not None


def identified_non_ancestor(P, i, j) -> bool:
    """No possibly directed path from ``i`` to ``j``."""
    P = _as_dpag(P)
    i, j = P.index(i), P.index(j)
    if i == j:
        raise ValueError("non-ancestor queries need two distinct nodes")
    return j not in pd_reachable(P, i)


# -- visibility and confounding ------------------------------------------------


def visibility_witness(P, i, j):
    """Node sequence certifying that ``i -> j`` is definitely visible, or None.

    Returns ``(k, i)`` for an edge ``k *-> i`` with ``k`` not adjacent to ``j``,
    or ``(k, c1, ..., i)`` for a collider path into ``i`` whose colliders are
    parents of ``j``.
    """
    P = _as_dpag(P)
    i, j = P.index(i), P.index(j)
    if not P.is_directed(i, j):
        raise EdgeNotDirected(f"{P.names[i]} -> {P.names[j]} is not in the DPAG")
    m = P.marks

    def into(a, b):
        return m[a, b] == ARROW

    def parent_of_j(c):
        return m[c, j] == ARROW and m[j, c] == TAIL

    for k in np.flatnonzero(m[:, i]):
        k = int(k)
        if k != j and into(k, i) and not P.adjacent(k, j):
            return (k, i)

    # collider paths, grown backwards from i; path[0] is the current inner collider
    stack = []
    for c in np.flatnonzero(m[:, i]):
        c = int(c)
        if c != j and into(c, i) and into(i, c) and parent_of_j(c):
            stack.append((c, i))
    while stack:
        path = stack.pop()
        c = path[0]
        for d in np.flatnonzero(m[:, c]):
            d = int(d)
            if d == j or d in path or not into(d, c):
                continue
            if not P.adjacent(d, j):
                return (d,) + path
            if parent_of_j(d) and into(c, d):
                stack.append((d,) + path)
    return None


def definitely_visible(P, i, j) -> bool:
    return visibility_witness(P, i, j) is not None


def identified_unconfounded(P, i, j) -> bool:
    """No bidirected edge between ``i`` and ``j`` in any contained DMG."""
    P = _as_dpag(P)
    i, j = P.index(i), P.index(j)
    if i == j:
        raise ValueError("confounding queries need two distinct nodes")
    if not P.adjacent(i, j):
        return True
    if P.is_directed(i, j):
        return definitely_visible(P, i, j)
    if P.is_directed(j, i):
        return definitely_visible(P, j, i)
    return False


# -- direct causes -------------------------------------------------------------


def identified_non_direct_cause(P, i, j) -> bool:
    """``i -> j`` is absent: arrowhead at ``i`` on the edge, or no edge at all."""
    P = _as_dpag(P)
    i, j = P.index(i), P.index(j)
    if i == j:
        raise ValueError("direct-cause queries need two distinct nodes")
    return not P.adjacent(i, j) or P.marks[j, i] == ARROW


def _replace_with_directed(P, k, j):
    m = np.array(P.marks)
    m[j, k] = TAIL
    m[k, j] = ARROW
    return DPAG(P.names, m)


def direct_cause_witness(P, i, j):
    """Which sufficient condition certifies ``i -> j`` as a direct cause: ``"i"``, ``"ii"`` or None."""
    P = _as_dpag(P)
    i, j = P.index(i), P.index(j)
    if not P.is_directed(i, j):
        raise EdgeNotDirected(f"{P.names[i]} -> {P.names[j]} is not in the DPAG")
    if j not in pd_reachable(P, i, skip_edge=(i, j)):
        return "i"
    if not definitely_visible(P, i, j):
        return None
    m = P.marks
    reach = pd_reachable(P, i, avoid=(j,))
    for k in sorted(reach - {i}):
        if not _pd(m, k, j):
            continue
        if not definitely_visible(_replace_with_directed(P, k, j), k, j):
            return None
    return "ii"


def identified_direct_cause(P, i, j) -> bool:
    return direct_cause_witness(P, i, j) is not None


# -- cycles --------------------------------------------------------------------


def _into_type(m, k, v):
    """Type of the edge ``k``-``v`` if it is into ``v``: the mark at ``k``; else 0."""
    if m[k, v] != ARROW:
        return 0
    return int(m[v, k])


def cycle_pattern(P, i, j) -> bool:
    """``i o-o j`` and every other node has matching edges into ``i`` and into ``j``."""
    m = P.marks
    if m[i, j] != CIRCLE or m[j, i] != CIRCLE:
        return False
    for k in range(P.n):
        if k in (i, j):
            continue
        if _into_type(m, k, i) != _into_type(m, k, j):
            return False
    return True


def possibly_cyclic_pairs(P, complete=False):
    """Pairs that may lie on a common cycle; every other pair is an identified non-cycle.

    Only meaningful on complete discovery outputs (pass ``complete=True`` for a
    bare DPAG known to be one).
    """
    P = _dpag(P, complete, "complete")
    return {frozenset((i, j)) for i, j in combinations(range(P.n), 2) if cycle_pattern(P, i, j)}


def _mcs_order(adj, component, first):
    """Maximum cardinality search over ``component`` visiting ``first`` in the given order."""
    weight = {v: 0 for v in component}
    order = []
    remaining = set(component)
    forced = list(first)
    while remaining:
        if forced:
            v = forced.pop(0)
        else:
            best = max(weight[u] for u in remaining)
            v = min(u for u in remaining if weight[u] == best)
        order.append(v)
        remaining.discard(v)
        for w in adj[v]:
            if w in remaining:
                weight[w] += 1
    return order


def cycle_witnesses(P, i, j, complete=False):
    """Two graphs Markov equivalent to the class of ``P``: one with ``i``, ``j`` on a cycle, one without.

    ``H`` orients every ``o->`` as ``->`` and the circle component as a DAG
    without unshielded colliders that starts with ``i -> j``; ``G_cyclic`` is
    ``H`` plus ``j -> i``.  Returns ``(G_cyclic, H)``.
    """
    P = _dpag(P, complete, "complete")
    i, j = P.index(i), P.index(j)
    if i == j or not cycle_pattern(P, i, j):
        raise PairNotEligible(f"({P.names[i]}, {P.names[j]}) does not show the cycle pattern")
    m = np.array(P.marks)
    n = P.n
    # arrowhead augmentation: k o-> v becomes k -> v
    for a in range(n):
        for b in range(n):
            if m[a, b] == CIRCLE and m[b, a] == ARROW:
                m[a, b] = TAIL
    circ = {v: [int(w) for w in np.flatnonzero((m[v] == CIRCLE) & (m[:, v] == CIRCLE))] for v in range(n)}
    seen = set()
    rank = {}
    starts = [i] + [v for v in range(n) if v != i]
    for s in starts:
        if s in seen or not circ[s]:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in circ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        first = [i, j] if s == i else [s]
        for pos, v in enumerate(_mcs_order(circ, sorted(comp), first)):
            rank[v] = pos
    for v in range(n):
        earlier = [w for w in circ[v] if rank[w] < rank[v]]
        for a, b in combinations(earlier, 2):
            if not (m[a, b] == CIRCLE and m[b, a] == CIRCLE):
                raise ChordalityViolation("circle component is not chordal; input is not a complete DPAG")
    for v in range(n):
        for w in circ[v]:
            if rank[v] < rank[w]:
                m[v, w] = ARROW
                m[w, v] = TAIL
    H = DMAG(P.names, m)
    Hg = H.to_dmg()
    return Hg.with_edges(directed=[(j, i)]), H


# -- JCI -----------------------------------------------------------------------


@dataclass(frozen=True)
class FeatureClaim:
    """An identified causal feature with the evidence that produced it."""

    kind: str
    pair: tuple
    rule: str
    witness: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in CLAIM_KINDS:
            raise ValueError(f"unknown claim kind {self.kind!r}")

    def to_dict(self, names):
        def name_seq(seq):
            if isinstance(seq, (tuple, list)):
                return [name_seq(s) for s in seq]
            if isinstance(seq, (int, np.integer)):
                return names[int(seq)]
            return seq

        return {
            "kind": self.kind,
            "pair": [names[v] for v in self.pair],
            "rule": self.rule,
            "witness": name_seq(self.witness),
        }

    def replay(self, P, contexts=()):
        """Re-derive the claim from ``P`` with the operation that defines it."""
        i, j = self.pair
        if self.kind == "ancestor":
            return identified_ancestor(P, i, j, r0_closed=True)
        if self.kind == "non_ancestor":
            return identified_non_ancestor(P, i, j)
        if self.kind == "unconfounded":
            return identified_unconfounded(P, i, j)
        if self.kind == "direct_cause":
            return identified_direct_cause(P, i, j)
        if self.kind == "non_direct_cause":
            return identified_non_direct_cause(P, i, j)
        if self.kind == "non_cycle":
            return frozenset((i, j)) not in possibly_cyclic_pairs(P, complete=True)
        claims = jci_direct_targets(P, contexts)
        return self in claims


def jci_direct_targets(P, context_nodes, system_nodes=None):
    """Direct (non-)target claims for context ``i`` and system node ``j``."""
    P = _as_dpag(P)
    K = list(P.indices(context_nodes))
    if system_nodes is None:
        system = [v for v in range(P.n) if v not in K]
    else:
        system = list(P.indices(system_nodes))
    claims = []
    m = P.marks
    for i in K:
        for j in system:
            if not P.adjacent(i, j):
                claims.append(FeatureClaim("non_target", (i, j), "non-adjacent"))
                continue
            if not P.is_directed(i, j):
                continue
            ok = True
            checked = []
            for k in system:
                if k == j or not P.is_directed(i, k) or not P.adjacent(k, j):
                    continue
                if not (m[k, j] == ARROW or (m[k, j] == CIRCLE and m[j, k] == CIRCLE)):
                    continue
                if m[j, k] == ARROW:
                    continue
                checked.append(k)
                if not definitely_visible(_replace_with_directed(P, k, j), k, j):
                    ok = False
                    break
            if ok:
                claims.append(FeatureClaim("direct_target", (i, j), "visible", tuple(checked)))
    return claims


def jci_possibly_cyclic_pairs(P, context_nodes=(), complete=False):
    """Possibly cyclic pairs restricted to system nodes."""
    P2 = _dpag(P, complete, "complete")
    K = set(P2.indices(context_nodes))
    return {pair for pair in possibly_cyclic_pairs(P2, complete=True) if not pair & K}


# -- summaries -----------------------------------------------------------------


def all_claims(P, context_nodes=None):
    """Every claim the criteria support on a discovery output, in deterministic order."""
    D = _dpag(P, getattr(P, "dpag", None) is not None or None, "complete")
    claims = []
    n = D.n
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            w = ancestor_witness(D, i, j, r0_closed=True)
            if w is not None:
                claims.append(FeatureClaim("ancestor", (i, j), "directed" if len(w) == 1 else "twin-uncovered", w))
            if identified_non_ancestor(D, i, j):
                claims.append(FeatureClaim("non_ancestor", (i, j), "no-pd-path"))
            if identified_non_direct_cause(D, i, j):
                rule = "non-adjacent" if not D.adjacent(i, j) else "arrowhead"
                claims.append(FeatureClaim("non_direct_cause", (i, j), rule))
            if D.is_directed(i, j):
                w = direct_cause_witness(D, i, j)
                if w is not None:
                    claims.append(FeatureClaim("direct_cause", (i, j), f"condition-{w}"))
    cyc = possibly_cyclic_pairs(D, complete=True)
    for i, j in combinations(range(n), 2):
        if identified_unconfounded(D, i, j):
            if not D.adjacent(i, j):
                claims.append(FeatureClaim("unconfounded", (i, j), "non-adjacent"))
            else:
                a, b = (i, j) if D.is_directed(i, j) else (j, i)
                claims.append(FeatureClaim("unconfounded", (i, j), "visible", visibility_witness(D, a, b)))
        if frozenset((i, j)) not in cyc:
            claims.append(FeatureClaim("non_cycle", (i, j), "pattern"))
    if context_nodes:
        claims.extend(jci_direct_targets(D, context_nodes))
    return claims
