"""Acyclifications of DMGs and the DMAG induced by an ADMG."""

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InvalidDensity, NotAcyclic
from .graphs import DMAG, DMG, Mark
from .separation import exists_inducing_path


@dataclass(frozen=True)
class Acyclification:
    """An ADMG over the source's nodes together with how it was produced."""

    graph: DMG
    source: DMG
    provenance: str

    @property
    def names(self):
        return self.graph.names


def _inter_scc_edges(G: DMG):
    """Edges every acyclification shares: copies of edges into each SCC.

    ``i -> j`` for ``i`` outside ``scc(j)`` whenever ``i`` points into ``scc(j)``;
    ``i <-> j`` for different SCCs whenever some member of ``scc(i)`` and some
    member of ``scc(j)`` are joined by a bidirected edge.
    """
    lab = np.asarray(G.scc_labels)
    members = {}
    for v, l in enumerate(lab):
        members.setdefault(int(l), []).append(v)
    directed = set()
    for a, b in G.directed:
        if lab[a] == lab[b]:
            continue
        for t in members[int(lab[b])]:
            directed.add((a, t))
    bidirected = set()
    for a, b in G.bidirected:
        if lab[a] == lab[b]:
            continue
        for s in members[int(lab[a])]:
            for t in members[int(lab[b])]:
                bidirected.add((min(s, t), max(s, t)))
    return directed, bidirected


def canonical_acyclification(G: DMG) -> Acyclification:
    """Every SCC becomes a complete bidirected component without directed edges."""
    directed, bidirected = _inter_scc_edges(G)
    for comp in G.sccs():
        bidirected.update(combinations(comp, 2))
    return Acyclification(DMG(G.names, sorted(directed), sorted(bidirected)), G, "canonical")


def acyclification_from_orders(G: DMG, orders=None, bidirected=(), provenance="ordered"):
    """Acyclification with each SCC replaced by the complete DAG of a total order.

    ``orders`` maps any SCC member to a sequence listing its component in the
    desired order; components without an entry use ascending index order.
    ``bidirected`` adds extra intra-SCC bidirected pairs.
    """
    directed, bi = _inter_scc_edges(G)
    orders = dict(orders or {})
    for comp in G.sccs():
        order = None
        for v in comp:
            if v in orders:
                order = [G.index(u) for u in orders[v]]
                break
        if order is None:
            order = list(comp)
        if sorted(order) != list(comp):
            raise ValueError(f"order {order} is not a permutation of component {list(comp)}")
        for a, b in combinations(order, 2):
            directed.add((a, b))
    for a, b in bidirected:
        a, b = G.index(a), G.index(b)
        if not G.same_scc[a, b] or a == b:
            raise ValueError("extra bidirected edges must join distinct nodes of one SCC")
        bi.add((min(a, b), max(a, b)))
    return Acyclification(DMG(G.names, sorted(directed), sorted(bi)), G, provenance)


def sample_acyclification(G: DMG, seed=0, bidirected_density=0.0) -> Acyclification:
    """Random acyclification; SCC orders and extra bidirected edges keyed on (seed, component)."""
    if not 0.0 <= bidirected_density <= 1.0:
        raise InvalidDensity(f"bidirected density {bidirected_density} outside [0, 1]")
    orders = {}
    extra = []
    for comp in G.sccs():
        if len(comp) == 1:
            continue
        rng = np.random.default_rng([int(seed), comp[0]])
        order = [comp[k] for k in rng.permutation(len(comp))]
        orders[comp[0]] = order
        if bidirected_density > 0:
            pairs = list(combinations(comp, 2))
            draws = rng.random(len(pairs))
            extra += [p for p, u in zip(pairs, draws) if u < bidirected_density]
    return acyclification_from_orders(G, orders, extra, provenance=f"sampled({int(seed)})")


def directed_path(G: DMG, i, j):
    """A shortest directed path from ``i`` to ``j`` as a node tuple, or None."""
    i, j = G.index(i), G.index(j)
    prev = {i: None}
    queue = deque([i])
    while queue:
        v = queue.popleft()
        if v == j:
            out = []
            while v is not None:
                out.append(v)
                v = prev[v]
            return tuple(reversed(out))
        for w in G.children(v):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def ancestral_witness_acyclification(G: DMG, i, j) -> Acyclification:
    """Acyclification keeping ``i`` an ancestor of ``j`` (requires ``i`` in an(j)).

    Each SCC visited by a shortest directed path from ``i`` to ``j`` is ordered
    with its entry node first and its exit node second, so the complete DAG
    contains the shortcut between them.
    """
    path = directed_path(G, i, j)
    if path is None:
        raise ValueError(f"{G.name(i)} is not an ancestor of {G.name(j)}")
    lab = G.scc_labels
    orders = {}
    k = 0
    while k < len(path):
        start = k
        while k + 1 < len(path) and lab[path[k + 1]] == lab[path[start]]:
            k += 1
        entry, exit_ = path[start], path[k]
        comp = G.scc(entry)
        if len(comp) > 1:
            head = [entry] if entry == exit_ else [entry, exit_]
            orders[entry] = head + [v for v in comp if v not in head]
        k += 1
    return acyclification_from_orders(G, orders, provenance="witness")


def is_acyclification(G: DMG, H) -> bool:
    """Check that ``H`` is an ADMG on the same nodes meeting the acyclification clauses."""
    if isinstance(H, Acyclification):
        H = H.graph
    if H.names != G.names or not H.is_acyclic():
        return False
    directed, bidirected = _inter_scc_edges(G)
    same = G.same_scc
    for a, b in combinations(range(G.n), 2):
        if same[a, b]:
            if not H.adjacent(a, b):
                return False
            continue
        if H.has_directed(a, b) != ((a, b) in directed):
            return False
        if H.has_directed(b, a) != ((b, a) in directed):
            return False
        if H.has_bidirected(a, b) != ((a, b) in bidirected):
            return False
    return True


def dmag_of_admg(H: DMG) -> DMAG:
    """The DMAG induced by an acyclic DMG."""
    if isinstance(H, Acyclification):
        H = H.graph
    if not H.is_acyclic():
        raise NotAcyclic("the induced DMAG is only defined for acyclic graphs")
    marks = np.zeros((H.n, H.n), dtype=np.int8)
    anc = H.anc_matrix
    for u, v in combinations(range(H.n), 2):
        if not exists_inducing_path(H, u, v):
            continue
        if anc[u, v]:
            marks[v, u], marks[u, v] = Mark.TAIL, Mark.ARROW
        elif anc[v, u]:
            marks[v, u], marks[u, v] = Mark.ARROW, Mark.TAIL
        else:
            marks[v, u] = marks[u, v] = Mark.ARROW
    return DMAG(H.names, marks)

