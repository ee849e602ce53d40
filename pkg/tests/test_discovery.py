from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicfci.acyclify import canonical_acyclification, sample_acyclification
from cyclicfci.discovery import (
    BackgroundKnowledge,
    ModelOracle,
    arrowhead_shape_violations,
    check_jci_assumptions,
    fci,
    fci_jci,
    graph_oracle,
    parse_jci_subset,
    pc_meek,
)
from cyclicfci.discovery import rules
from cyclicfci.discovery.state import PagState
from cyclicfci.discovery.validate import check_output
from cyclicfci.errors import InvalidJciSubset, OracleInconsistent, UniverseMismatch
from cyclicfci.generators import random_dmg
from cyclicfci.graphs import DPAG, build_dmg
from cyclicfci.identify import contains, possibly_cyclic_pairs
from cyclicfci.separation import IndependenceModel, independence_model

from strategies import dmgs


def state_from(names, text, sepsets=None):
    st_ = PagState(names)
    st_.m = np.array(DPAG.parse(names, text).marks)
    for (a, b), Z in (sepsets or {}).items():
        st_.sepsets[frozenset((names.index(a), names.index(b)))] = tuple(names.index(z) for z in Z)
    return st_


def edges(state):
    return sorted(state.to_dpag().edge_strings())


class TestOracle:
    def test_example_queries(self, example_g):
        o = graph_oracle(example_g, "sigma")
        assert o.query("X10", "X8", [])
        rest = [v for v in range(10) if v not in (2, 3)]
        for r in range(3):
            for Z in combinations(rest, r):
                assert not o.query(2, 3, Z)

    def test_acyclification_oracle_pointwise(self, example_g):
        a = graph_oracle(example_g, "sigma")
        b = graph_oracle(canonical_acyclification(example_g).graph, "d")
        for i, j in combinations(range(10), 2):
            for Z in [(), (1,), (2, 5), (0, 3, 6)]:
                if i in Z or j in Z:
                    continue
                assert a.query(i, j, Z) == b.query(i, j, Z)

    def test_memoized_and_symmetric(self, example_g):
        o = graph_oracle(example_g)
        o.query(0, 1, [2])
        calls = o.calls
        assert o.query(1, 0, [2]) == o.query(0, 1, [2]) and o.calls == calls


class TestRules:
    def test_r0(self):
        s = state_from("abc", "a o-o b\nb o-o c", {("a", "c"): ()})
        assert rules.rule0(s)
        assert edges(s) == ["a o-> b", "b <-o c"]
        s = state_from("abc", "a o-o b\nb o-o c", {("a", "c"): ("b",)})
        assert not rules.rule0(s)

    def test_r1(self):
        s = state_from("abc", "a o-> b\nb o-o c")
        assert rules.rule1(s) and edges(s) == ["a o-> b", "b -> c"]

    def test_r2(self):
        s = state_from("abc", "a -> b\nb -> c\na o-o c")
        assert rules.rule2(s) and "a o-> c" in edges(s)

    def test_r3(self):
        s = state_from("abcd", "a o-> b\nc o-> b\na o-o d\nd o-o c\nd o-o b")
        assert rules.rule3(s) and "b <-o d" in edges(s)

    def test_r4_tail_branch(self):
        names = "xabc"
        text = "x o-> a\na <-> b\na -> c\nb o-o c"
        s = state_from(names, text, {("x", "c"): ("a", "b"), ("x", "b"): ()})
        assert rules.discriminating_path(s, 2, 3) == (0, 1, 2, 3)
        assert rules.rule4(s) and "b -> c" in edges(s)

    def test_r4_collider_branch(self):
        s = state_from("xabc", "x o-> a\na <-> b\na -> c\nb o-o c", {("x", "c"): ("a",), ("x", "b"): ()})
        assert rules.rule4(s) and "b <-> c" in edges(s)

    def test_r8(self):
        s = state_from("abc", "a -> b\nb -> c\na o-> c")
        assert rules.rule8(s) and "a -> c" in edges(s)

    def test_r9(self):
        s = state_from("abcd", "a o-> c\na o-o b\nb -> d\nd -> c")
        assert rules.rule9(s) and "a -> c" in edges(s)

    def test_r10(self):
        s = state_from("abcd", "a o-> c\na o-o b\na o-o d\nb -> c\nd -> c")
        assert rules.rule10(s) and "a -> c" in edges(s)

    def test_r10_needs_nonadjacent_first_steps(self):
        s = state_from("abcd", "a o-> c\na o-o b\na o-o d\nb -> c\nd -> c\nb o-o d")
        assert not rules.rule10(s)

    def test_conflict_raises(self):
        s = state_from("ab", "a -> b")
        with pytest.raises(OracleInconsistent):
            s.set_mark(0, 1, rules.ARROW, "test")


class TestFci:
    def test_example(self, example_g, example_p):
        res = fci(graph_oracle(example_g, "sigma"))
        assert res.dpag == example_p
        assert res.replay() == example_p

    def test_independent_pair(self):
        im = IndependenceModel(("a", "b"), [(0, 1, 0)])
        assert fci(ModelOracle(im)).dpag.edges() == []

    def test_same_output_for_acyclifications(self, example_g, example_p):
        for seed in range(3):
            H = sample_acyclification(example_g, seed, bidirected_density=0.5).graph
            assert fci(graph_oracle(H, "d")).dpag == example_p

    def test_universe_mismatch(self, example_g):
        with pytest.raises(UniverseMismatch):
            fci(graph_oracle(example_g), universe=["a"])

    def test_deterministic_trace(self, example_g):
        a = fci(graph_oracle(example_g)).trace
        b = fci(graph_oracle(example_g)).trace
        assert a == b

    def test_sepsets_are_separating(self, example_g):
        res = fci(graph_oracle(example_g))
        im = independence_model(example_g)
        for pair, Z in res.sepsets.items():
            i, j = sorted(pair)
            assert im.independent(i, j, Z)

    def test_conflicting_colliders_become_bidirected(self):
        # a _||_ d | b and b _||_ c | d: unshielded colliders a *-> c <-* d and b *-> a <-* c
        im = IndependenceModel.from_sets("abcd", [(0, 3, (1,)), (1, 2, (3,))])
        P = fci(ModelOracle(im)).dpag
        assert P.is_bidirected("a", "c")

    @settings(max_examples=60, deadline=None)
    @given(dmgs(max_n=5), st.integers(0, 999))
    def test_sound_and_oracle_invariant(self, G, seed):
        P = fci(graph_oracle(G, "sigma")).dpag
        assert contains(P, G)
        assert not arrowhead_shape_violations(P)
        H = sample_acyclification(G, seed, bidirected_density=0.3).graph
        assert fci(graph_oracle(H, "d")).dpag == P
        pairs = possibly_cyclic_pairs(fci(graph_oracle(G)), complete=True)
        for i, j in combinations(range(G.n), 2):
            if G.same_scc[i, j]:
                assert frozenset((i, j)) in pairs


class TestShapeCheck:
    def test_flags_violation(self):
        P = DPAG.parse("abc", "a o-> b\nb o-o c")
        assert arrowhead_shape_violations(P)

    def test_check_output_raises_when_enabled(self, monkeypatch):
        monkeypatch.setenv("CYCLICFCI_VALIDATE_OUTPUT", "1")
        with pytest.raises(AssertionError):
            check_output(DPAG.parse("abc", "a o-> b\nb o-o c"))
        monkeypatch.setenv("CYCLICFCI_VALIDATE_OUTPUT", "0")
        check_output(DPAG.parse("abc", "a o-> b\nb o-o c"))


class TestPc:
    def test_chain(self):
        G = build_dmg("abc", [("a", "b"), ("b", "c")])
        assert pc_meek(graph_oracle(G, "d")).dpag.edge_strings() == ["a o-o b", "b o-o c"]

    def test_collider(self):
        G = build_dmg("abc", [("a", "c"), ("b", "c")])
        assert pc_meek(graph_oracle(G, "d")).dpag.edge_strings() == ["a -> c", "b -> c"]

    def test_two_cycle_with_parent(self):
        G = build_dmg("wab", [("w", "a"), ("a", "b"), ("b", "a")])
        pc_out = pc_meek(graph_oracle(G, "sigma")).dpag
        fci_out = fci(graph_oracle(G, "sigma")).dpag
        assert pc_out.adjacent("w", "b") and pc_out.adjacent("a", "b") and pc_out.adjacent("w", "a")
        assert contains(pc_out, G) and contains(fci_out, G)

    def test_inconsistent_oracle(self):
        im = IndependenceModel.from_sets("abcd", [(0, 3, (1,)), (1, 2, (3,))])
        with pytest.raises(OracleInconsistent):
            pc_meek(ModelOracle(im))

    @settings(max_examples=60, deadline=None)
    @given(dmgs(max_n=5, bidirected=False))
    def test_sound_on_causally_sufficient(self, G):
        P = pc_meek(graph_oracle(G)).dpag
        assert contains(P, G)


class TestJci:
    def test_parse_subset(self):
        assert parse_jci_subset("123") == frozenset({1, 2, 3})
        assert parse_jci_subset("1,2") == frozenset({1, 2})
        assert parse_jci_subset(None) == frozenset()
        for bad in ("2", "1,3", "4", "x"):
            with pytest.raises(InvalidJciSubset):
                parse_jci_subset(bad)

    def test_check_assumptions(self):
        G = build_dmg(["k", "x"], [("x", "k")])
        assert not check_jci_assumptions(G, ["k"], "1")
        K = build_dmg(["k1", "k2", "x"], [("k1", "x")], [("k1", "k2")])
        assert check_jci_assumptions(K, ["k1", "k2"], "123")
        assert not check_jci_assumptions(build_dmg(["k1", "k2"]), ["k1", "k2"], "123")
        assert not check_jci_assumptions(build_dmg(["k", "x"], [], [("k", "x")]), ["k"], "12")

    def test_two_contexts_one_system_node(self):
        G = build_dmg(["k1", "k2", "x"], [("k1", "x")], [("k1", "k2")])
        P = fci_jci(graph_oracle(G), context_nodes=["k1", "k2"]).dpag
        assert P.is_bidirected("k1", "k2")
        assert P.marks[P.index("k1"), P.index("x")] == 2  # arrowhead at x
        assert contains(P, G)
        # without the background knowledge no mark on k1 - x can be oriented
        assert fci(graph_oracle(G)).dpag.edge_strings() == ["k1 o-o k2", "k1 o-o x"]

    def test_empty_subset_is_plain_fci(self, example_g):
        assert fci_jci(graph_oracle(example_g), context_nodes=["X10"], jci_subset=()).dpag == fci(graph_oracle(example_g)).dpag

    def test_unknown_context(self, example_g):
        with pytest.raises(UniverseMismatch):
            fci_jci(graph_oracle(example_g), context_nodes=["nope"])

    @pytest.mark.parametrize("subset", ["1", "12", "123"])
    def test_sound_and_acyclifications_keep_assumptions(self, subset):
        for seed in range(40):
            G = random_dmg(5, 0.35, 0.2, seed=seed, constraints=dict(jci_subset=subset, context_count=2))
            assert check_jci_assumptions(G, [0, 1], subset)
            bk = BackgroundKnowledge.jci([0, 1], subset)
            P = fci(graph_oracle(G), bk=bk).dpag
            assert contains(P, G)
            for s in range(3):
                H = sample_acyclification(G, s, bidirected_density=0.3).graph
                assert check_jci_assumptions(H, [0, 1], subset)
            assert check_jci_assumptions(canonical_acyclification(G).graph, [0, 1], subset)

    def test_background_predicates(self, example_g):
        assert not BackgroundKnowledge("acyclicity").holds(example_g)
        assert not BackgroundKnowledge("causal_sufficiency").holds(example_g)
        assert BackgroundKnowledge().holds(example_g)
        with pytest.raises(ValueError):
            BackgroundKnowledge("magic")
