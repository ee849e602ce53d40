"""Independence oracles: the only input the discovery algorithms see."""

from typing import Protocol, Sequence

import numpy as np

from ..graphs import DMG
from ..separation import IndependenceModel, _reach, _same_matrix, as_criterion


class IndependenceOracle(Protocol):
    names: Sequence[str]

    def query(self, i: int, j: int, Z) -> bool:
        """True iff ``i`` and ``j`` are independent given ``Z``."""


class GraphOracle:
    """Answers queries by separation in a known graph; results are memoized."""

    def __init__(self, G: DMG, crit="sigma"):
        self.graph = G
        self.names = G.names
        self.criterion = as_criterion(crit)
        self._same = np.ascontiguousarray(_same_matrix(G, self.criterion))
        self._cache = {}
        self.calls = 0

    def query(self, i, j, Z=()) -> bool:
        G = self.graph
        i, j = G.index(i), G.index(j)
        Z = G.indices(Z)
        key = (min(i, j), max(i, j), Z)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        if i == j or i in Z or j in Z:
            raise ValueError("independence queries need distinct i, j outside the conditioning set")
        cond = np.zeros(G.n, dtype=bool)
        cond[list(Z)] = True
        collider_ok = G.anc_matrix[:, cond].any(axis=1)
        result = not _reach(G, self._same, cond, collider_ok, G.mask(i), G.mask(j))
        self._cache[key] = result
        return result


class ModelOracle:
    """Answers queries from an explicit pairwise independence model."""

    def __init__(self, model: IndependenceModel):
        self.model = model
        self.names = model.names

    def query(self, i, j, Z=()) -> bool:
        return self.model.independent(i, j, Z)


def graph_oracle(G: DMG, crit="sigma") -> GraphOracle:
    return GraphOracle(G, crit)
