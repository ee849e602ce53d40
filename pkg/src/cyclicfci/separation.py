"""d- and sigma-separation, inducing paths and pairwise independence models."""

from enum import Enum
from itertools import combinations

import numpy as np

from . import kernels
from .errors import InvalidWalk, UniverseMismatch, UniverseTooLarge
from .graphs import DMG, Step, Walk

DEFAULT_CAP = 12


class Criterion(str, Enum):
    D = "d"
    SIGMA = "sigma"


def as_criterion(crit):
    if isinstance(crit, Criterion):
        return crit
    try:
        return Criterion(str(crit).lower())
    except ValueError:
        raise ValueError(f"unknown separation criterion {crit!r}; use 'd' or 'sigma'") from None


def _same_matrix(G: DMG, crit):
    if as_criterion(crit) is Criterion.SIGMA:
        return G.same_scc
    return np.eye(G.n, dtype=bool)


def _collider_ok(G: DMG, cond):
    return np.ascontiguousarray(G.anc_matrix[:, cond].any(axis=1))


def _reach(G, same, cond, collider_ok, sources, targets, into_source=False, into_target=False):
    return bool(
        kernels.reach(
            G.dir_matrix,
            G.bi_matrix,
            np.ascontiguousarray(same),
            np.ascontiguousarray(cond),
            np.ascontiguousarray(collider_ok),
            np.ascontiguousarray(sources),
            np.ascontiguousarray(targets),
            into_source,
            into_target,
        )
    )


# -- single walks --------------------------------------------------------------


def _checked_walk(G, w):
    if isinstance(w, str):
        w = Walk.parse(w, G)
    return w.validate(G)


def _blocked(G, w, C, sigma):
    w = _checked_walk(G, w)
    C = set(G.indices(C))
    nodes = w.nodes
    if nodes[0] in C or nodes[-1] in C:
        return True
    anc_c = set(G.ancestors(C)) if C else set()
    for k in range(1, len(nodes) - 1):
        v = nodes[k]
        left_head, right_head = w.head_at(k)
        if left_head and right_head:
            if v not in anc_c:
                return True
            continue
        if v not in C:
            continue
        if not sigma:
            return True
        # the non-collider points along its tail ends; blocked if any such neighbour leaves its SCC
        scc = set(G.scc(v))
        if w.steps[k - 1] == Step.BACKWARD and nodes[k - 1] not in scc:
            return True
        if w.steps[k] == Step.FORWARD and nodes[k + 1] not in scc:
            return True
    return False


def walk_d_blocked(G: DMG, w, C=()) -> bool:
    """Whether walk ``w`` is d-blocked by ``C``."""
    return _blocked(G, w, C, sigma=False)


def walk_sigma_blocked(G: DMG, w, C=()) -> bool:
    """Whether walk ``w`` is sigma-blocked by ``C``."""
    return _blocked(G, w, C, sigma=True)


def is_inducing_path(G: DMG, p, i, j) -> bool:
    """Check the inducing-walk conditions for walk ``p`` between ``i`` and ``j``.

    Colliders must be ancestors of ``{i, j}``; every other non-endpoint node may
    only point (along the walk) into its own strongly connected component.
    """
    p = _checked_walk(G, p)
    i, j = G.index(i), G.index(j)
    if {p.nodes[0], p.nodes[-1]} != {i, j} or len(p.nodes) < 2:
        raise InvalidWalk("walk does not connect the two given nodes")
    anc = set(G.ancestors((i, j)))
    nodes = p.nodes
    for k in range(1, len(nodes) - 1):
        v = nodes[k]
        if p.is_collider(k):
            if v not in anc:
                return False
            continue
        if v in (i, j):
            continue
        scc = set(G.scc(v))
        if p.steps[k - 1] == Step.BACKWARD and nodes[k - 1] not in scc:
            return False
        if p.steps[k] == Step.FORWARD and nodes[k + 1] not in scc:
            return False
    return True


# -- set queries ---------------------------------------------------------------


def separated(G: DMG, A, B, C=(), crit="sigma") -> bool:
    """Whether every walk between ``A`` and ``B`` is blocked by ``C``."""
    A, B, C = set(G.indices(A)), set(G.indices(B)), set(G.indices(C))
    A -= C
    B -= C
    if A & B:
        return False
    if not A or not B:
        return True
    cond = G.mask(C)
    return not _reach(G, _same_matrix(G, crit), cond, _collider_ok(G, cond), G.mask(A), G.mask(B))


def exists_inducing_path(G: DMG, i, j, into_i=False, into_j=False) -> bool:
    """Whether an inducing walk between ``i`` and ``j`` exists.

    ``into_i`` / ``into_j`` restrict to walks with an arrowhead at that end.
    Without the restrictions this holds iff no subset of the other nodes
    sigma-separates ``i`` and ``j``.
    """
    i, j = G.index(i), G.index(j)
    if i == j:
        raise ValueError("inducing paths join two distinct nodes")
    cond = np.ones(G.n, dtype=bool)
    cond[[i, j]] = False
    collider_ok = G.anc_matrix[:, [i, j]].any(axis=1)
    return _reach(G, G.same_scc, cond, collider_ok, G.mask(i), G.mask(j), into_i, into_j)


def separating_sets(G: DMG, i, j, crit="sigma"):
    """All ``Z`` (as sorted tuples, enumeration order) that separate ``i`` and ``j``."""
    i, j = G.index(i), G.index(j)
    masks = _sweep_masks(G, i, j, crit)
    return [tuple(v for v in range(G.n) if (m >> v) & 1) for m in masks]


def _sweep_masks(G, i, j, crit):
    return kernels.sweep(G.dir_matrix, G.bi_matrix, np.ascontiguousarray(_same_matrix(G, crit)), G.anc_matrix, i, j)


def inseparable(G: DMG, i, j, crit="sigma") -> bool:
    """Brute-force check that no subset of the other nodes separates ``i`` and ``j``."""
    return len(separating_sets(G, i, j, crit)) == 0


# -- independence models -------------------------------------------------------


class IndependenceModel:
    """Pairwise independence model: triples ``(i, j, Z)`` with ``i < j``.

    ``Z`` is stored as a bitmask over node indices.  Equality compares the node
    universe and the triple set.
    """

    def __init__(self, names, triples):
        self.names = tuple(names)
        self.n = len(self.names)
        self._triples = frozenset((min(i, j), max(i, j), int(m)) for i, j, m in triples)
        self._by_pair = {}
        for i, j, m in self._triples:
            self._by_pair.setdefault((i, j), set()).add(m)

    @classmethod
    def from_sets(cls, names, triples):
        """Build from ``(i, j, Z)`` with ``Z`` an iterable of indices."""
        return cls(names, [(i, j, sum(1 << v for v in Z)) for i, j, Z in triples])

    def _pair(self, i, j):
        return (i, j) if i < j else (j, i)

    def independent(self, i, j, Z=()) -> bool:
        mask = 0
        for v in Z:
            mask |= 1 << v
        return mask in self._by_pair.get(self._pair(i, j), ())

    def __contains__(self, triple):
        i, j, Z = triple
        return self.independent(i, j, Z)

    def separating_sets(self, i, j):
        masks = sorted(self._by_pair.get(self._pair(i, j), ()), key=lambda m: (bin(m).count("1"), m))
        return [tuple(v for v in range(self.n) if (m >> v) & 1) for m in masks]

    def separable(self, i, j) -> bool:
        return self._pair(i, j) in self._by_pair

    def triples(self):
        """Sorted ``(i, j, Z)`` triples with ``Z`` a tuple of indices."""
        return [(i, j, tuple(v for v in range(self.n) if (m >> v) & 1)) for i, j, m in sorted(self._triples)]

    def fingerprint(self) -> bytes:
        """Canonical byte string; equal models have equal fingerprints and vice versa."""
        keys = np.array(sorted(((i * self.n + j) << self.n) | m for i, j, m in self._triples), dtype=np.int64)
        return self.names.__repr__().encode() + b"|" + keys.tobytes()

    def __len__(self):
        return len(self._triples)

    def __iter__(self):
        return iter(self.triples())

    def __eq__(self, other):
        if not isinstance(other, IndependenceModel):
            return NotImplemented
        return self.names == other.names and self._triples == other._triples

    def __hash__(self):
        return hash((self.names, self._triples))

    def __repr__(self):
        return f"IndependenceModel(n={self.n}, triples={len(self)})"


def independence_model(G: DMG, crit="sigma", cap=DEFAULT_CAP) -> IndependenceModel:
    """All separations ``(i, j, Z)`` of ``G`` under ``crit`` with singleton ``i``, ``j``."""
    if G.n > cap:
        raise UniverseTooLarge(f"{G.n} nodes exceeds the independence-model cap of {cap}")
    triples = []
    for i, j in combinations(range(G.n), 2):
        for m in _sweep_masks(G, i, j, crit):
            triples.append((i, j, int(m)))
    return IndependenceModel(G.names, triples)


def markov_equivalent(G1: DMG, G2: DMG, crit="sigma", cap=DEFAULT_CAP) -> bool:
    if G1.names != G2.names:
        raise UniverseMismatch("graphs must share the same node universe")
    return independence_model(G1, crit, cap) == independence_model(G2, crit, cap)
