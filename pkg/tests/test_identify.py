import json
from itertools import combinations

import pytest
from hypothesis import given, settings

from cyclicfci.acyclify import is_acyclification
from cyclicfci.discovery import fci, graph_oracle
from cyclicfci.errors import EdgeNotDirected, PairNotEligible, UniverseMismatch
from cyclicfci.graphs import DPAG, build_dmg
from cyclicfci.identify import (
    CLAIM_KINDS,
    FeatureClaim,
    all_claims,
    ancestor_witness,
    contains,
    cycle_pattern,
    cycle_witnesses,
    definitely_visible,
    direct_cause_witness,
    identified_ancestor,
    identified_direct_cause,
    identified_non_ancestor,
    identified_non_direct_cause,
    identified_unconfounded,
    possibly_cyclic_pairs,
    visibility_witness,
)
from cyclicfci.separation import exists_inducing_path, independence_model

from strategies import dmgs


def truth(G, claim):
    i, j = claim.pair
    return {
        "ancestor": lambda: G.anc_matrix[i, j],
        "non_ancestor": lambda: not G.anc_matrix[i, j],
        "unconfounded": lambda: not G.has_bidirected(i, j),
        "direct_cause": lambda: G.has_directed(i, j),
        "non_direct_cause": lambda: not G.has_directed(i, j),
        "non_cycle": lambda: not G.same_scc[i, j],
    }[claim.kind]()


@pytest.fixture(scope="module")
def example_result(example_g):
    return fci(graph_oracle(example_g, "sigma"))


class TestExampleGraph:
    def test_contains(self, example_g, example_result):
        assert contains(example_result, example_g)

    def test_not_contained_without_edge(self, example_g, example_result):
        G = build_dmg(
            example_g.names,
            [(a, b) for a, b, k in example_g.edge_list() if k == "directed" and (a, b) != ("X6", "X7")],
            [(a, b) for a, b, k in example_g.edge_list() if k == "bidirected"],
        )
        assert not contains(example_result, G)

    def test_ancestors(self, example_result):
        assert identified_ancestor(example_result, "X2", "X4")
        assert identified_ancestor(example_result, "X2", "X7")
        (path,) = ancestor_witness(example_result, "X2", "X7")
        assert path[0] == example_result.dpag.index("X2") and path[-1] == example_result.dpag.index("X7")

    def test_non_ancestors(self, example_p):
        assert identified_non_ancestor(example_p, "X8", "X1")
        assert identified_non_ancestor(example_p, "X1", "X8")
        assert not identified_non_ancestor(example_p, "X3", "X7")

    def test_visibility(self, example_p):
        assert definitely_visible(example_p, "X6", "X7")
        assert definitely_visible(example_p, "X2", "X3")
        w = visibility_witness(example_p, "X2", "X3")
        assert example_p.names[w[0]] in ("X8", "X9")

    def test_confounding(self, example_p):
        assert identified_unconfounded(example_p, "X2", "X7")
        assert identified_unconfounded(example_p, "X2", "X5")
        assert not identified_unconfounded(example_p, "X1", "X3")

    def test_direct_causes(self, example_p):
        assert identified_direct_cause(example_p, "X6", "X7")
        assert direct_cause_witness(example_p, "X6", "X7") == "i"
        assert not identified_direct_cause(example_p, "X2", "X3")
        assert identified_non_direct_cause(example_p, "X7", "X6")

    def test_cyclic_pairs(self, example_result):
        P = example_result.dpag
        got = {tuple(sorted(P.names[v] for v in p)) for p in possibly_cyclic_pairs(example_result)}
        assert got == {tuple(sorted(p)) for p in combinations(["X3", "X4", "X5", "X6"], 2)}

    def test_cycle_witnesses(self, example_g, example_result):
        Gc, H = cycle_witnesses(example_result, "X3", "X4")
        im = independence_model(example_g)
        assert independence_model(Gc, "sigma") == im
        assert independence_model(H.to_dmg(), "d") == im
        assert Gc.same_scc[Gc.index("X3"), Gc.index("X4")]
        assert is_acyclification(Gc, H.to_dmg())


class TestSmallCases:
    def test_single_edge_is_direct_cause_but_not_visible(self):
        P = DPAG.parse("ij", "i -> j")
        assert not definitely_visible(P, "i", "j")
        assert direct_cause_witness(P, "i", "j") == "i"
        assert not identified_unconfounded(P, "i", "j")

    def test_circle_pair_cycle_witnesses(self):
        G = build_dmg("ab", [("a", "b"), ("b", "a")])
        res = fci(graph_oracle(G))
        assert res.dpag.edge_strings() == ["a o-o b"]
        assert possibly_cyclic_pairs(res) == {frozenset((0, 1))}
        Gc, H = cycle_witnesses(res, "a", "b")
        assert set(Gc.directed) == {(0, 1), (1, 0)}
        assert set(H.to_dmg().directed) == {(0, 1)}

    def test_pair_not_eligible(self, example_result):
        with pytest.raises(PairNotEligible):
            cycle_witnesses(example_result, "X1", "X2")

    def test_edge_not_directed(self, example_p):
        with pytest.raises(EdgeNotDirected):
            definitely_visible(example_p, "X1", "X3")
        with pytest.raises(EdgeNotDirected):
            direct_cause_witness(example_p, "X7", "X6")

    def test_bare_dpag_needs_attestation(self, example_p):
        with pytest.raises(ValueError):
            identified_ancestor(example_p, "X2", "X4")
        assert identified_ancestor(example_p, "X2", "X4", r0_closed=True)
        with pytest.raises(ValueError):
            possibly_cyclic_pairs(example_p)
        assert possibly_cyclic_pairs(example_p, complete=True)

    def test_containment_universe(self, example_p):
        with pytest.raises(UniverseMismatch):
            contains(example_p, build_dmg("ab"))

    def test_pattern_is_symmetric(self, example_p):
        for i, j in combinations(range(example_p.n), 2):
            assert cycle_pattern(example_p, i, j) == cycle_pattern(example_p, j, i)


class TestClaims:
    def test_example_claims(self, example_g, example_result):
        claims = all_claims(example_result)
        assert claims and {c.kind for c in claims} <= set(CLAIM_KINDS)
        for c in claims:
            assert truth(example_g, c), c
            assert c.replay(example_result)

    def test_json(self, example_result):
        names = example_result.dpag.names
        docs = [c.to_dict(names) for c in all_claims(example_result)]
        text = json.dumps(docs)
        assert json.loads(text) == docs
        assert all(isinstance(d["pair"][0], str) for d in docs)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            FeatureClaim("maybe", (0, 1), "x")

    @settings(max_examples=80, deadline=None)
    @given(dmgs(max_n=5))
    def test_claims_sound(self, G):
        res = fci(graph_oracle(G))
        for c in all_claims(res):
            assert truth(G, c), c

    @settings(max_examples=60, deadline=None)
    @given(dmgs(max_n=5))
    def test_arrowheads_and_visibility_imply_inducing_paths(self, G):
        P = fci(graph_oracle(G)).dpag
        m = P.marks
        for k in range(G.n):
            for i in range(G.n):
                if k != i and m[k, i] == 2:
                    # k *-> i: i is not an ancestor of k, and k, i are joined by an inducing path into i
                    assert not G.anc_matrix[i, k]
                    assert exists_inducing_path(G, k, i, into_j=True)
        for i in range(G.n):
            for j in range(G.n):
                if i != j and P.is_directed(i, j) and definitely_visible(P, i, j):
                    assert not exists_inducing_path(G, i, j, into_i=True)

    @settings(max_examples=40, deadline=None)
    @given(dmgs(min_n=2, max_n=4))
    def test_cycle_witnesses_reproduce_model(self, G):
        res = fci(graph_oracle(G))
        im = independence_model(G)
        for pair in possibly_cyclic_pairs(res):
            i, j = sorted(pair)
            Gc, H = cycle_witnesses(res, i, j)
            assert independence_model(Gc) == im
            assert Gc.same_scc[i, j]
            assert is_acyclification(Gc, H.to_dmg())
