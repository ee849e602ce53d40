"""Seeded random DMGs for tests, benchmarks and the CLI."""

from dataclasses import dataclass

import numpy as np

from .discovery.background import parse_jci_subset
from .errors import InvalidDensity
from .graphs import DMG


@dataclass(frozen=True)
class Constraints:
    """Structural restrictions honoured by :func:`random_dmg`.

    Context nodes (when ``context_count > 0``) are the lowest indices.
    """

    acyclic_only: bool = False
    causal_sufficiency: bool = False
    jci_subset: frozenset = frozenset()
    context_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "jci_subset", parse_jci_subset(self.jci_subset))
        if self.context_count < 0:
            raise ValueError("context_count must be non-negative")

    @classmethod
    def coerce(cls, value):
        if value is None:
            return cls()
        if isinstance(value, cls):
            return value
        return cls(**dict(value))


def default_names(n):
    return tuple(f"X{k}" for k in range(1, n + 1))


def _check_density(name, value):
    if not 0.0 <= value <= 1.0:
        raise InvalidDensity(f"{name} {value} outside [0, 1]")


def random_dmg(n, edge_density=0.3, bidirected_density=0.1, seed=0, constraints=None, names=None) -> DMG:
    """Random DMG on ``n`` nodes, reproducible from ``seed``.

    Every ordered pair gets ``i -> j`` with probability ``edge_density`` and
    every unordered pair gets ``i <-> j`` with probability
    ``bidirected_density``; constraints then prune or add edges.
    """
    _check_density("edge_density", edge_density)
    _check_density("bidirected_density", bidirected_density)
    c = Constraints.coerce(constraints)
    if c.context_count > n:
        raise ValueError(f"{c.context_count} context nodes requested for {n} nodes")
    names = default_names(n) if names is None else tuple(names)
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    d = rng.random((n, n)) < edge_density
    b = np.triu(rng.random((n, n)) < bidirected_density, 1)
    np.fill_diagonal(d, False)

    if c.acyclic_only:
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        d &= rank[:, None] < rank[None, :]
    if c.causal_sufficiency:
        b[:] = False

    K = np.zeros(n, dtype=bool)
    K[: c.context_count] = True
    S = ~K
    if c.context_count:
        if 1 in c.jci_subset:
            d[np.ix_(S, K)] = False
        if 2 in c.jci_subset:
            b[np.ix_(K, S)] = False
            b[np.ix_(S, K)] = False
        if 3 in c.jci_subset:
            d[np.ix_(K, K)] = False
            b[np.ix_(K, K)] = True
            b = np.triu(b, 1)

    directed = list(zip(*np.nonzero(d)))
    bidirected = list(zip(*np.nonzero(b)))
    return DMG(names, [(int(i), int(j)) for i, j in directed], [(int(i), int(j)) for i, j in bidirected])


def random_dmgs(count, n_choices=(3, 4, 5), seed=0, **kwargs):
    """``count`` graphs with sizes cycling through ``n_choices`` and seeds derived from ``seed``."""
    ss = np.random.SeedSequence(seed)
    out = []
    for k, child in enumerate(ss.spawn(count)):
        n = n_choices[k % len(n_choices)]
        out.append(random_dmg(n, seed=child, **kwargs))
    return out
