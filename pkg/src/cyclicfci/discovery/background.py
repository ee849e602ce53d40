"""Background knowledge: the predicate on DMGs and its encoding for FCI."""

from dataclasses import dataclass
from itertools import combinations

from ..errors import InvalidJciSubset
from ..graphs import DMG
from .state import ARROW, TAIL, PagState

JCI_SUBSETS = (frozenset(), frozenset({1}), frozenset({1, 2}), frozenset({1, 2, 3}))

VARIANTS = ("none", "acyclicity", "causal_sufficiency", "jci")


def parse_jci_subset(subset):
    """Accept ``"123"``, ``"1,2"``, ``(1, 2, 3)``, ``None`` ... and validate."""
    if subset is None:
        return frozenset()
    if isinstance(subset, str):
        tokens = [t for t in subset.replace(",", " ").split() if t]
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        try:
            subset = [int(t) for t in tokens]
        except ValueError:
            raise InvalidJciSubset(f"cannot parse JCI subset {subset!r}") from None
    out = frozenset(int(s) for s in subset)
    if out not in JCI_SUBSETS:
        raise InvalidJciSubset(f"JCI subset must be one of {{}}, {{1}}, {{1,2}}, {{1,2,3}}; got {sorted(out)}")
    return out


def check_jci_assumptions(G: DMG, context_nodes, subset) -> bool:
    """Literal check of the requested JCI assumptions on the edges of ``G``."""
    subset = parse_jci_subset(subset)
    K = set(G.indices(context_nodes))
    system = [v for v in range(G.n) if v not in K]
    if 1 in subset and any(G.dir_matrix[i, k] for i in system for k in K):
        return False
    if 2 in subset and any(G.bi_matrix[i, k] for i in system for k in K):
        return False
    if 3 in subset:
        for k, k2 in combinations(sorted(K), 2):
            if not G.bi_matrix[k, k2] or G.dir_matrix[k, k2] or G.dir_matrix[k2, k]:
                return False
    return True


@dataclass(frozen=True)
class BackgroundKnowledge:
    """Which class of graphs the ground truth is known to belong to."""

    variant: str = "none"
    jci_subset: frozenset = frozenset()
    context_nodes: tuple = ()

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown background knowledge {self.variant!r}")
        object.__setattr__(self, "jci_subset", parse_jci_subset(self.jci_subset))
        object.__setattr__(self, "context_nodes", tuple(sorted(set(self.context_nodes))))

    @classmethod
    def jci(cls, context_nodes, subset=(1, 2, 3)):
        return cls("jci", parse_jci_subset(subset), tuple(context_nodes))

    def holds(self, G: DMG) -> bool:
        """The predicate itself, evaluated on a DMG."""
        if self.variant == "acyclicity":
            return G.is_acyclic()
        if self.variant == "causal_sufficiency":
            return not G.bidirected
        if self.variant == "jci":
            return check_jci_assumptions(G, self.context_nodes, self.jci_subset)
        return True

    # -- FCI encoding -----------------------------------------------------------

    def resolve_contexts(self, names):
        index = {name: pos for pos, name in enumerate(names)}
        out = []
        for k in self.context_nodes:
            out.append(index[k] if isinstance(k, str) else int(k))
        return sorted(out)

    def fixed_pairs(self, names):
        """Pairs exempt from skeleton removal (context pairs under assumption 3)."""
        if self.variant != "jci" or 3 not in self.jci_subset:
            return frozenset()
        K = self.resolve_contexts(names)
        return frozenset(frozenset(p) for p in combinations(K, 2))

    def apply(self, state: PagState):
        """Impose the marks implied by the JCI assumptions on the working graph."""
        if self.variant != "jci" or not self.jci_subset:
            return
        K = set(self.resolve_contexts(state.names))
        for k in sorted(K):
            for i in state.neighbors(k):
                if i in K:
                    if 3 in self.jci_subset:
                        state.orient(k, i, ARROW, ARROW, "JCI3")
                    continue
                state.set_mark(i, k, ARROW, "JCI1")
                if 2 in self.jci_subset:
                    state.set_mark(k, i, TAIL, "JCI2")
