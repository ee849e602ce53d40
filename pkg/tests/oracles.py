"""Brute-force reference implementations used to derive and check expected values.

Nothing here calls into the package's algorithms; graphs are read through
their raw edge sets only.
"""

from itertools import combinations, product


def edges_of(G):
    """``(n, directed set, bidirected set)`` with bidirected pairs as sorted tuples."""
    return G.n, set(G.directed), {tuple(sorted(p)) for p in G.bidirected}


def ancestor_table(G):
    n, d, _ = edges_of(G)
    anc = [[i == j for j in range(n)] for i in range(n)]
    for a, b in d:
        anc[a][b] = True
    for k in range(n):
        for i in range(n):
            if anc[i][k]:
                for j in range(n):
                    if anc[k][j]:
                        anc[i][j] = True
    return anc


def scc_table(G):
    anc = ancestor_table(G)
    n = G.n
    return [[anc[i][j] and anc[j][i] for j in range(n)] for i in range(n)]


def steps_between(G, a, b):
    """Edge kinds usable to step from ``a`` to ``b``: 'fwd' a->b, 'bwd' a<-b, 'bi' a<->b."""
    _, d, bi = edges_of(G)
    out = []
    if (a, b) in d:
        out.append("fwd")
    if (b, a) in d:
        out.append("bwd")
    if tuple(sorted((a, b))) in bi:
        out.append("bi")
    return out


def enumerate_paths(G, i, j):
    """All paths between ``i`` and ``j`` as ``(nodes, kinds)``; parallel edges give separate paths."""
    out = []

    def extend(nodes, kinds):
        cur = nodes[-1]
        if cur == j:
            out.append((tuple(nodes), tuple(kinds)))
            return
        for nxt in range(G.n):
            if nxt in nodes:
                continue
            for kind in steps_between(G, cur, nxt):
                extend(nodes + [nxt], kinds + [kind])

    if i == j:
        return [((i,), ())]
    extend([i], [])
    return out


def enumerate_walks(G, i, j, max_edges):
    out = []

    def extend(nodes, kinds):
        if nodes[-1] == j and kinds:
            out.append((tuple(nodes), tuple(kinds)))
        if len(kinds) == max_edges:
            return
        cur = nodes[-1]
        for nxt in range(G.n):
            if nxt == cur:
                continue
            for kind in steps_between(G, cur, nxt):
                extend(nodes + [nxt], kinds + [kind])

    extend([i], [])
    return out


def _arrow_at_left(kind):
    return kind in ("bwd", "bi")


def _arrow_at_right(kind):
    return kind in ("fwd", "bi")


def walk_blocked(G, walk, C, crit):
    """Blocking by the textbook definitions: endpoints, colliders, non-colliders."""
    nodes, kinds = walk
    C = set(C)
    anc = ancestor_table(G)
    scc = scc_table(G)
    if nodes[0] in C or nodes[-1] in C:
        return True
    for k in range(1, len(nodes) - 1):
        v = nodes[k]
        left, right = kinds[k - 1], kinds[k]
        collider = _arrow_at_right(left) and _arrow_at_left(right)
        if collider:
            if not any(anc[v][c] for c in C):
                return True
            continue
        if v not in C:
            continue
        if crit == "d":
            return True
        # sigma: blocked only if v points to a walk neighbour outside its SCC
        if left == "bwd" and not scc[v][nodes[k - 1]]:
            return True
        if right == "fwd" and not scc[v][nodes[k + 1]]:
            return True
    return False


def separated_by_paths(G, i, j, C, crit):
    if i == j:
        return i in set(C)
    return all(walk_blocked(G, p, C, crit) for p in enumerate_paths(G, i, j))


def independence_triples(G, crit):
    """All ``(i, j, Z)`` with ``i < j`` and ``Z`` a sorted tuple, by path enumeration."""
    out = set()
    for i, j in combinations(range(G.n), 2):
        rest = [v for v in range(G.n) if v not in (i, j)]
        for r in range(len(rest) + 1):
            for Z in combinations(rest, r):
                if separated_by_paths(G, i, j, Z, crit):
                    out.add((i, j, Z))
    return out


def is_inducing_walk(G, walk, i, j):
    nodes, kinds = walk
    anc = ancestor_table(G)
    scc = scc_table(G)
    for k in range(1, len(nodes) - 1):
        v = nodes[k]
        left, right = kinds[k - 1], kinds[k]
        if _arrow_at_right(left) and _arrow_at_left(right):
            if not (anc[v][i] or anc[v][j]):
                return False
        else:
            if left == "bwd" and not scc[v][nodes[k - 1]]:
                return False
            if right == "fwd" and not scc[v][nodes[k + 1]]:
                return False
    return True


def inducing_walk_exists(G, i, j, max_edges):
    return any(is_inducing_walk(G, w, i, j) for w in enumerate_walks(G, i, j, max_edges))


def inducing_path_exists(G, i, j):
    return any(is_inducing_walk(G, p, i, j) for p in enumerate_paths(G, i, j))


def no_separating_set(G, i, j, crit="sigma"):
    rest = [v for v in range(G.n) if v not in (i, j)]
    for r in range(len(rest) + 1):
        for Z in combinations(rest, r):
            if separated_by_paths(G, i, j, Z, crit):
                return False
    return True


# -- DAG equivalence classes -----------------------------------------------------


def _is_acyclic(n, directed):
    indeg = [0] * n
    for _, b in directed:
        indeg[b] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for a, b in directed:
            if a == v:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
    return seen == n


def _v_structures(n, directed):
    adj = {frozenset(e) for e in directed}
    out = set()
    for c in range(n):
        parents = sorted(a for a, b in directed if b == c)
        for a, b in combinations(parents, 2):
            if frozenset((a, b)) not in adj:
                out.add((a, c, b))
    return out


def cpdag_by_enumeration(G):
    """CPDAG of DAG ``G``: orient each skeleton edge as in every equivalent DAG, else undirected.

    Members are all acyclic orientations of the skeleton with the same
    v-structures.  Returns ``(directed set, undirected set of sorted pairs)``.
    """
    n, d, bi = edges_of(G)
    assert not bi and _is_acyclic(n, d)
    skeleton = sorted({tuple(sorted(e)) for e in d})
    target = _v_structures(n, d)
    members = []
    for choice in product((0, 1), repeat=len(skeleton)):
        orient = {(a, b) if c == 0 else (b, a) for (a, b), c in zip(skeleton, choice)}
        if _is_acyclic(n, orient) and _v_structures(n, orient) == target:
            members.append(orient)
    directed, undirected = set(), set()
    for a, b in skeleton:
        if all((a, b) in m for m in members):
            directed.add((a, b))
        elif all((b, a) in m for m in members):
            directed.add((b, a))
        else:
            undirected.add((a, b))
    return directed, undirected


# -- DOT -------------------------------------------------------------------------


def parse_dot_edges(text):
    """Tiny DOT reader: checks the digraph frame and returns node and edge statements."""
    import re

    body = text.strip()
    head = re.match(r'^digraph\s+("(?:[^"\\]|\\.)*"|\w+)\s*\{(.*)\}$', body, re.S)
    if not head:
        raise ValueError("not a digraph")
    nodes, edges = [], []
    ident = r'"((?:[^"\\]|\\.)*)"'
    for stmt in head.group(2).split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        m = re.match(rf"^{ident}\s*->\s*{ident}\s*\[(.*)\]$", stmt)
        if m:
            attrs = dict(kv.strip().split("=") for kv in m.group(3).split(","))
            edges.append((m.group(1), m.group(2), attrs))
            continue
        m = re.match(rf"^{ident}$", stmt)
        if m:
            nodes.append(m.group(1))
            continue
        raise ValueError(f"bad statement {stmt!r}")
    return nodes, edges
