"""FCI and FCI-JCI drivers."""

from ..errors import UniverseMismatch
from .background import BackgroundKnowledge, parse_jci_subset
from .rules import any_rule_fires, orient_to_fixpoint, rule0
from .skeleton import adjacency_search, possible_d_sep_stage
from .state import DiscoveryResult, PagState
from .validate import check_output


def resolve_universe(oracle, universe):
    names = tuple(getattr(oracle, "names", ()) or ())
    if universe is None:
        if not names:
            raise UniverseMismatch("oracle declares no node universe; pass one explicitly")
        return names
    universe = tuple(universe)
    if names and universe != names:
        raise UniverseMismatch(f"universe {universe} does not match the oracle's {names}")
    return universe


def fci(oracle, universe=None, bk: BackgroundKnowledge = None) -> DiscoveryResult:
    """Complete FCI (no selection bias) as a map from independence oracles to DPAGs.

    Stages: adjacency search; R0; Possible-D-SEP re-tests; marks reset to
    circles; R0 again; then the arrowhead rules R1-R4 and tail rules R8-R10
    until nothing changes.  Background knowledge, when given, contributes
    fixed adjacencies and marks.
    """
    names = resolve_universe(oracle, universe)
    bk = bk or BackgroundKnowledge()
    state = PagState(names)
    fixed = bk.fixed_pairs(names)

    adjacency_search(state, oracle, fixed)
    bk.apply(state)
    rule0(state)
    possible_d_sep_stage(state, oracle, fixed)
    state.reset_marks()
    bk.apply(state)
    rule0(state)
    orient_to_fixpoint(state)
    if any_rule_fires(state):  # pragma: no cover - guarded by the fixpoint loop
        raise RuntimeError("orientation rules did not reach a fixpoint")

    result = DiscoveryResult(state.to_dpag(), dict(state.sepsets), list(state.trace))
    check_output(result.dpag, "fci")
    return result


def fci_jci(oracle, universe=None, context_nodes=(), jci_subset=(1, 2, 3)) -> DiscoveryResult:
    """FCI with the JCI background knowledge for the given context nodes."""
    subset = parse_jci_subset(jci_subset)
    names = resolve_universe(oracle, universe)
    contexts = []
    for k in context_nodes:
        if isinstance(k, str):
            if k not in names:
                raise UniverseMismatch(f"context node {k!r} not in universe")
            contexts.append(names.index(k))
        else:
            contexts.append(int(k))
    if not subset:
        return fci(oracle, names)
    return fci(oracle, names, BackgroundKnowledge("jci", subset, tuple(contexts)))
