"""Graph types: directed mixed graphs (DMGs) and directed partial ancestral graphs (DPAGs).

Nodes are dense integer indices ``0..n-1`` with unique display names.  Every
public method accepts either the index or the name of a node.  Set-valued
results come back as tuples sorted by index.
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    DuplicateEdge,
    GraphValidationError,
    InvalidEdgeType,
    InvalidWalk,
    SelfLoop,
    UnknownNode,
)


class Mark(IntEnum):
    """Edge-end mark of a DPAG.  ``0`` in a mark matrix means "no edge"."""

    CIRCLE = 1
    ARROW = 2
    TAIL = 3

    @property
    def symbol(self):
        return {Mark.CIRCLE: "o", Mark.ARROW: ">", Mark.TAIL: "-"}[self]


NO_EDGE = 0

# (mark at the first node, mark at the second node)
ALLOWED_MARK_PAIRS = frozenset(
    {
        (Mark.TAIL, Mark.ARROW),
        (Mark.ARROW, Mark.TAIL),
        (Mark.ARROW, Mark.ARROW),
        (Mark.CIRCLE, Mark.ARROW),
        (Mark.ARROW, Mark.CIRCLE),
        (Mark.CIRCLE, Mark.CIRCLE),
    }
)


def _names_index(names):
    index = {}
    for pos, name in enumerate(names):
        if not isinstance(name, str) or not name:
            raise GraphValidationError(f"node names must be non-empty strings, got {name!r}")
        if name in index:
            raise GraphValidationError(f"duplicate node name {name!r}")
        index[name] = pos
    return index


class _Nodes:
    """Shared node bookkeeping for DMG and DPAG."""

    names: tuple
    _index: dict

    @property
    def n(self):
        return len(self.names)

    @property
    def nodes(self):
        return tuple(range(self.n))

    def index(self, node):
        """Resolve a node given by index or name."""
        if isinstance(node, (int, np.integer)) and not isinstance(node, bool):
            node = int(node)
            if 0 <= node < self.n:
                return node
            raise UnknownNode(f"node index {node} out of range for {self.n} nodes")
        try:
            return self._index[node]
        except (KeyError, TypeError):
            raise UnknownNode(f"unknown node {node!r}") from None

    def indices(self, nodes):
        if nodes is None:
            return ()
        if isinstance(nodes, (str, int, np.integer)):
            nodes = (nodes,)
        return tuple(sorted({self.index(v) for v in nodes}))

    def mask(self, nodes):
        out = np.zeros(self.n, dtype=bool)
        for v in self.indices(nodes):
            out[v] = True
        return out

    def name(self, i):
        return self.names[self.index(i)]


class DMG(_Nodes):
    """Directed mixed graph, possibly cyclic.

    Between two nodes there may be ``i -> j``, ``j -> i`` and ``i <-> j``
    simultaneously.  Self-loops are rejected.  Instances are immutable.
    """


    def __init__(self, names: Sequence[str], directed: Iterable = (), bidirected: Iterable = ()):
        self.names = tuple(names)
        self._index = _names_index(self.names)
        d_set = set()
        for a, b in directed:
            a, b = self.index(a), self.index(b)
            if a == b:
                raise SelfLoop(f"self-loop on {self.names[a]}")
            if (a, b) in d_set:
                raise DuplicateEdge(f"duplicate directed edge {self.names[a]} -> {self.names[b]}")
            d_set.add((a, b))
        b_set = set()
        for a, b in bidirected:
            a, b = self.index(a), self.index(b)
            if a == b:
                raise SelfLoop(f"bidirected self-loop on {self.names[a]}")
            key = (min(a, b), max(a, b))
            if key in b_set:
                raise DuplicateEdge(f"duplicate bidirected edge {self.names[a]} <-> {self.names[b]}")
            b_set.add(key)
        self.directed = frozenset(d_set)
        self.bidirected = frozenset(b_set)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_matrices(cls, names, directed, bidirected=None):
        directed = np.asarray(directed, dtype=bool)
        d_edges = list(zip(*np.nonzero(directed)))
        b_edges = []
        if bidirected is not None:
            bidirected = np.asarray(bidirected, dtype=bool)
            b_edges = [(i, j) for i, j in zip(*np.nonzero(np.triu(bidirected | bidirected.T, 1)))]
        return cls(names, [(int(a), int(b)) for a, b in d_edges], [(int(a), int(b)) for a, b in b_edges])

    @classmethod
    def empty(cls, names):
        return cls(names)

    def with_edges(self, directed=(), bidirected=()):
        """Copy with extra edges (already present ones are ignored)."""
        d = set(self.directed) | {(self.index(a), self.index(b)) for a, b in directed}
        b = set(self.bidirected) | {tuple(sorted((self.index(a), self.index(b)))) for a, b in bidirected}
        return DMG(self.names, sorted(d), sorted(b))

    def without_edges(self, directed=(), bidirected=()):
        d = set(self.directed) - {(self.index(a), self.index(b)) for a, b in directed}
        b = set(self.bidirected) - {tuple(sorted((self.index(a), self.index(b)))) for a, b in bidirected}
        return DMG(self.names, sorted(d), sorted(b))

    # -- dense views ----------------------------------------------------------

    @cached_property
    def dir_matrix(self):
        m = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.directed:
            m[a, b] = True
        m.flags.writeable = False
        return m

    @cached_property
    def bi_matrix(self):
        m = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.bidirected:
            m[a, b] = m[b, a] = True
        m.flags.writeable = False
        return m

    @cached_property
    def anc_matrix(self):
        """``anc_matrix[i, j]`` is true iff ``i`` is an ancestor of ``j``."""
        m = np.ascontiguousarray(kernels.closure(np.ascontiguousarray(self.dir_matrix)))
        m.flags.writeable = False
        return m

    @cached_property
    def scc_labels(self):
        """Component label per node: the smallest index in its SCC (Tarjan)."""
        n = self.n
        children = [sorted(b for a, b in self.directed if a == v) for v in range(n)]
        index = [-1] * n
        low = [0] * n
        on_stack = [False] * n
        stack = []
        labels = [-1] * n
        counter = 0
        for root in range(n):
            if index[root] >= 0:
                continue
            work = [(root, 0)]
            while work:
                v, pos = work.pop()
                if pos == 0:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                recurse = False
                kids = children[v]
                while pos < len(kids):
                    w = kids[pos]
                    pos += 1
                    if index[w] < 0:
                        work.append((v, pos))
                        work.append((w, 0))
                        recurse = True
                        break
                    if on_stack[w]:
                        low[v] = min(low[v], index[w])
                if recurse:
                    continue
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    label = min(comp)
                    for w in comp:
                        labels[w] = label
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
        return tuple(labels)

    @cached_property
    def same_scc(self):
        lab = np.asarray(self.scc_labels, dtype=np.int64)
        m = lab[:, None] == lab[None, :]
        m.flags.writeable = False
        return m

    # -- queries --------------------------------------------------------------

    def has_directed(self, a, b):
        return (self.index(a), self.index(b)) in self.directed

    def has_bidirected(self, a, b):
        a, b = self.index(a), self.index(b)
        return (min(a, b), max(a, b)) in self.bidirected

    def adjacent(self, a, b):
        a, b = self.index(a), self.index(b)
        return a != b and (self.dir_matrix[a, b] or self.dir_matrix[b, a] or self.bi_matrix[a, b])

    def parents(self, v):
        v = self.index(v)
        return tuple(int(u) for u in np.flatnonzero(self.dir_matrix[:, v]))

    def children(self, v):
        v = self.index(v)
        return tuple(int(u) for u in np.flatnonzero(self.dir_matrix[v]))

    def spouses(self, v):
        v = self.index(v)
        return tuple(int(u) for u in np.flatnonzero(self.bi_matrix[v]))

    def ancestors(self, nodes):
        """All ancestors of ``nodes``; every node is its own ancestor."""
        idx = self.indices(nodes)
        if not idx:
            return ()
        return tuple(int(u) for u in np.flatnonzero(self.anc_matrix[:, list(idx)].any(axis=1)))

    def descendants(self, nodes):
        idx = self.indices(nodes)
        if not idx:
            return ()
        return tuple(int(u) for u in np.flatnonzero(self.anc_matrix[list(idx), :].any(axis=0)))

    def is_ancestor(self, a, b):
        return bool(self.anc_matrix[self.index(a), self.index(b)])

    def scc(self, v):
        v = self.index(v)
        lab = self.scc_labels[v]
        return tuple(u for u in range(self.n) if self.scc_labels[u] == lab)

    def sccs(self):
        groups = {}
        for v, lab in enumerate(self.scc_labels):
            groups.setdefault(lab, []).append(v)
        return [tuple(g) for _, g in sorted(groups.items())]

    def is_acyclic(self):
        return len(set(self.scc_labels)) == self.n

    def has_almost_directed_cycle(self):
        anc = self.anc_matrix
        return any(anc[a, b] or anc[b, a] for a, b in self.bidirected)

    def induced_subgraph(self, nodes):
        keep = self.indices(nodes)
        pos = {v: k for k, v in enumerate(keep)}
        d = [(pos[a], pos[b]) for a, b in self.directed if a in pos and b in pos]
        b = [(pos[a], pos[b]) for a, b in self.bidirected if a in pos and b in pos]
        return DMG([self.names[v] for v in keep], sorted(d), sorted(b))

    def edge_list(self):
        """Edges as ``(name, name, "directed" | "bidirected")`` in index order."""
        out = [(self.names[a], self.names[b], "directed") for a, b in sorted(self.directed)]
        out += [(self.names[a], self.names[b], "bidirected") for a, b in sorted(self.bidirected)]
        return out

    # -- dunder ---------------------------------------------------------------

    def _key(self):
        return (self.names, self.directed, self.bidirected)

    def __eq__(self, other):
        if not isinstance(other, DMG):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        parts = [f"{self.names[a]}->{self.names[b]}" for a, b in sorted(self.directed)]
        parts += [f"{self.names[a]}<->{self.names[b]}" for a, b in sorted(self.bidirected)]
        return f"DMG([{', '.join(self.names)}]; {', '.join(parts)})"


def build_dmg(nodes, directed_pairs=(), bidirected_pairs=()):
    """Validated DMG from node names and edge pairs given by name or index."""
    return DMG(list(nodes), list(directed_pairs), list(bidirected_pairs))


# -- walks ---------------------------------------------------------------------


class Step(str, Enum):
    """Orientation of a walk edge relative to the traversal direction."""

    FORWARD = "->"
    BACKWARD = "<-"
    BIDIRECTED = "<->"


@dataclass(frozen=True)
class Walk:
    """Alternating node/edge sequence; ``steps[k]`` joins ``nodes[k]`` and ``nodes[k+1]``."""

    nodes: tuple
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "steps", tuple(Step(s) for s in self.steps))
        if not self.nodes:
            raise InvalidWalk("a walk has at least one node")
        if len(self.steps) != len(self.nodes) - 1:
            raise InvalidWalk("a walk with k nodes has k-1 edges")

    @classmethod
    def parse(cls, text, graph=None):
        """Parse ``"X1 <-> X3 -> X4"``; node names are resolved when ``graph`` is given."""
        tokens = text.split()
        if len(tokens) % 2 == 0:
            raise InvalidWalk(f"cannot parse walk {text!r}")
        nodes = tokens[0::2]
        if graph is not None:
            nodes = [graph.index(v) for v in nodes]
        return cls(tuple(nodes), tuple(tokens[1::2]))

    @property
    def is_path(self):
        return len(set(self.nodes)) == len(self.nodes)

    def __len__(self):
        return len(self.steps)

    def head_at(self, k):
        """Whether the walk edges adjacent to position ``k`` have arrowheads at it: (left, right)."""
        left = right = False
        if k > 0:
            left = self.steps[k - 1] in (Step.FORWARD, Step.BIDIRECTED)
        if k < len(self.steps):
            right = self.steps[k] in (Step.BACKWARD, Step.BIDIRECTED)
        return left, right

    def is_collider(self, k):
        if k == 0 or k == len(self.nodes) - 1:
            return False
        left, right = self.head_at(k)
        return left and right

    def validate(self, graph: "DMG"):
        nodes = tuple(graph.index(v) for v in self.nodes)
        for k, step in enumerate(self.steps):
            a, b = nodes[k], nodes[k + 1]
            ok = {
                Step.FORWARD: graph.dir_matrix[a, b],
                Step.BACKWARD: graph.dir_matrix[b, a],
                Step.BIDIRECTED: graph.bi_matrix[a, b],
            }[step]
            if not ok:
                raise InvalidWalk(f"edge {graph.names[a]} {step.value} {graph.names[b]} not in graph")
        return Walk(nodes, self.steps)


# -- DPAGs ---------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeInfo:
    """Uniform accessor for the edge between ``i`` and ``j`` of a DPAG."""

    i: int
    j: int
    adjacent: bool
    mark_i: "Mark | None"
    mark_j: "Mark | None"

    @property
    def into_i(self):
        return self.mark_i == Mark.ARROW

    @property
    def into_j(self):
        return self.mark_j == Mark.ARROW

    @property
    def out_of_i(self):
        return self.mark_i == Mark.TAIL

    @property
    def out_of_j(self):
        return self.mark_j == Mark.TAIL

    @property
    def symbol(self):
        if not self.adjacent:
            return None
        return _SYMBOL_OF.get((self.mark_i, self.mark_j), f"{self.mark_i.symbol}-{self.mark_j.symbol}")


class DPAG(_Nodes):
    """Directed partial ancestral graph.

    ``marks[i, j]`` holds the mark at ``j`` on the edge between ``i`` and ``j``
    (0 when they are not adjacent).  Allowed edge types: ``->``, ``<-``,
    ``<->``, ``o->``, ``<-o`` and ``o-o``.
    """


    def __init__(self, names: Sequence[str], marks):
        self.names = tuple(names)
        self._index = _names_index(self.names)
        marks = np.array(marks, dtype=np.int8, copy=True)
        if marks.shape != (self.n, self.n):
            raise GraphValidationError(f"mark matrix must be {self.n}x{self.n}, got {marks.shape}")
        if np.any(np.diag(marks) != 0):
            raise SelfLoop("DPAG edges must join distinct nodes")
        if not np.array_equal(marks != 0, (marks != 0).T):
            raise GraphValidationError("mark matrix must have symmetric support")
        if np.any((marks < 0) | (marks > 3)):
            raise InvalidEdgeType("marks must be 0 (none), 1 (circle), 2 (arrow) or 3 (tail)")
        for i, j in zip(*np.nonzero(np.triu(marks, 1))):
            pair = (Mark(int(marks[j, i])), Mark(int(marks[i, j])))
            if pair not in ALLOWED_MARK_PAIRS:
                raise InvalidEdgeType(
                    f"edge {self.names[i]} {_symbol(*pair)} {self.names[j]} is not a DPAG edge type"
                )
        marks.flags.writeable = False
        self.marks = marks

    @classmethod
    def from_edges(cls, names, edges=()):
        """Build from ``(a, b, mark_at_a, mark_at_b)`` tuples; marks may be Mark or their names."""
        names = tuple(names)
        index = _names_index(names)
        m = np.zeros((len(names), len(names)), dtype=np.int8)
        for a, b, ma, mb in edges:
            a = _resolve(index, names, a)
            b = _resolve(index, names, b)
            if a == b:
                raise SelfLoop(f"self-loop on {names[a]}")
            if m[a, b] != 0:
                raise DuplicateEdge(f"duplicate edge {names[a]} - {names[b]}")
            m[b, a] = _as_mark(ma)
            m[a, b] = _as_mark(mb)
        return cls(names, m)

    @classmethod
    def parse(cls, names, text):
        """Build from lines like ``X1 o-> X2`` / ``X3 <-> X4`` / ``a o-o b``."""
        edges = []
        for line in text.replace(";", "\n").splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                a, sym, b = line.split()
                edges.append((a, b, *_parse_symbol(sym)))
            except ValueError:
                raise GraphValidationError(f"cannot parse DPAG edge {line!r}") from None
        return cls.from_edges(names, edges)

    # -- queries --------------------------------------------------------------

    def adjacent(self, a, b):
        return bool(self.marks[self.index(a), self.index(b)] != 0)

    def neighbors(self, v):
        v = self.index(v)
        return tuple(int(u) for u in np.flatnonzero(self.marks[v]))

    def mark_at(self, node, other):
        """Mark at ``node`` on the edge between ``node`` and ``other`` (None if absent)."""
        m = int(self.marks[self.index(other), self.index(node)])
        return Mark(m) if m else None

    def edge(self, i, j) -> EdgeInfo:
        i, j = self.index(i), self.index(j)
        if i == j:
            raise GraphValidationError("edge query needs two distinct nodes")
        return EdgeInfo(i, j, self.adjacent(i, j), self.mark_at(i, j), self.mark_at(j, i))

    def is_directed(self, a, b):
        """``a -> b``."""
        a, b = self.index(a), self.index(b)
        return self.marks[b, a] == Mark.TAIL and self.marks[a, b] == Mark.ARROW

    def is_bidirected(self, a, b):
        a, b = self.index(a), self.index(b)
        return self.marks[b, a] == Mark.ARROW and self.marks[a, b] == Mark.ARROW

    def is_bicircle(self, a, b):
        a, b = self.index(a), self.index(b)
        return self.marks[b, a] == Mark.CIRCLE and self.marks[a, b] == Mark.CIRCLE

    def is_circle_arrow(self, a, b):
        """``a o-> b``."""
        a, b = self.index(a), self.index(b)
        return self.marks[b, a] == Mark.CIRCLE and self.marks[a, b] == Mark.ARROW

    def is_into(self, a, b):
        """The edge between ``a`` and ``b`` has an arrowhead at ``b``."""
        return self.marks[self.index(a), self.index(b)] == Mark.ARROW

    def edges(self):
        """``(i, j, mark_i, mark_j)`` with ``i < j``, sorted."""
        out = []
        for i, j in zip(*np.nonzero(np.triu(self.marks, 1))):
            out.append((int(i), int(j), Mark(int(self.marks[j, i])), Mark(int(self.marks[i, j]))))
        return out

    def edge_strings(self):
        return [f"{self.names[i]} {_symbol(mi, mj)} {self.names[j]}" for i, j, mi, mj in self.edges()]

    @property
    def has_circles(self):
        return bool(np.any(self.marks == Mark.CIRCLE))

    def with_edge(self, a, b, mark_a, mark_b):
        """Copy with the edge between ``a`` and ``b`` replaced."""
        a, b = self.index(a), self.index(b)
        m = np.array(self.marks)
        m[b, a] = _as_mark(mark_a)
        m[a, b] = _as_mark(mark_b)
        return DPAG(self.names, m)

    def without_edge(self, a, b):
        a, b = self.index(a), self.index(b)
        m = np.array(self.marks)
        m[a, b] = m[b, a] = 0
        return DPAG(self.names, m)

    def skeleton(self):
        s = self.marks != 0
        s.flags.writeable = False
        return s

    def to_dmg(self):
        """Circle-free DPAG as a DMG (``->`` directed, ``<->`` bidirected)."""
        if self.has_circles:
            raise GraphValidationError("only circle-free DPAGs convert to DMGs")
        d, b = [], []
        for i, j, mi, mj in self.edges():
            if mi == Mark.TAIL:
                d.append((i, j))
            elif mj == Mark.TAIL:
                d.append((j, i))
            else:
                b.append((i, j))
        return DMG(self.names, d, b)

    def is_dmag(self):
        """No circles, ancestral and maximal."""
        if self.has_circles:
            return False
        from .separation import exists_inducing_path

        g = self.to_dmg()
        if not g.is_acyclic() or g.has_almost_directed_cycle():
            return False
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if not self.marks[i, j] and exists_inducing_path(g, i, j):
                    return False
        return True

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DPAG):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.marks, other.marks)

    def __hash__(self):
        return hash((self.names, self.marks.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}([{', '.join(self.names)}]; {', '.join(self.edge_strings())})"


class DMAG(DPAG):
    """Circle-free DPAG that is ancestral and maximal (validated on construction)."""

    def __init__(self, names, marks):
        super().__init__(names, marks)
        if not self.is_dmag():
            raise GraphValidationError("graph is not a DMAG (circle, (almost) directed cycle, or not maximal)")

    @classmethod
    def from_dpag(cls, p: DPAG):
        return cls(p.names, p.marks)


def _resolve(index, names, node):
    if isinstance(node, (int, np.integer)) and not isinstance(node, bool):
        if 0 <= int(node) < len(names):
            return int(node)
        raise UnknownNode(f"node index {node} out of range")
    try:
        return index[node]
    except KeyError:
        raise UnknownNode(f"unknown node {node!r}") from None


def _as_mark(m):
    if isinstance(m, str):
        try:
            return Mark[m.upper()]
        except KeyError:
            raise InvalidEdgeType(f"unknown mark {m!r}") from None
    try:
        return Mark(int(m))
    except ValueError:
        raise InvalidEdgeType(f"unknown mark {m!r}") from None


def _symbol(mark_left, mark_right):
    key = (Mark(mark_left), Mark(mark_right))
    return _SYMBOL_OF.get(key, f"{key[0].symbol}-{key[1].symbol}")


_SYMBOLS = {
    "->": (Mark.TAIL, Mark.ARROW),
    "-->": (Mark.TAIL, Mark.ARROW),
    "<-": (Mark.ARROW, Mark.TAIL),
    "<--": (Mark.ARROW, Mark.TAIL),
    "<->": (Mark.ARROW, Mark.ARROW),
    "o->": (Mark.CIRCLE, Mark.ARROW),
    "<-o": (Mark.ARROW, Mark.CIRCLE),
    "o-o": (Mark.CIRCLE, Mark.CIRCLE),
}

_SYMBOL_OF = {
    (Mark.TAIL, Mark.ARROW): "->",
    (Mark.ARROW, Mark.TAIL): "<-",
    (Mark.ARROW, Mark.ARROW): "<->",
    (Mark.CIRCLE, Mark.ARROW): "o->",
    (Mark.ARROW, Mark.CIRCLE): "<-o",
    (Mark.CIRCLE, Mark.CIRCLE): "o-o",
}


def _parse_symbol(sym):
    try:
        return _SYMBOLS[sym]
    except KeyError:
        raise InvalidEdgeType(f"unknown edge symbol {sym!r}") from None
