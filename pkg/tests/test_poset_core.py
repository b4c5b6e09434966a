import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from arcposet import poset_core as pc
from arcposet import rook_monoid as rm
from arcposet import theorems as th
from arcposet.poset_core import FinitePoset

from fixtures import B3_EDGES, B3_NODES, NON_LATTICE_EDGES, poset_from_named_edges


@st.composite
def posets(draw, max_m=8):
    m = draw(st.integers(1, max_m))
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if draw(st.booleans())]
    return FinitePoset.from_covers(list(range(m)), edges)


def as_digraph(P):
    g = nx.DiGraph()
    g.add_nodes_from(range(len(P)))
    g.add_edges_from(P.covers)
    return g


def shuffled(P, seed):
    rng = random.Random(seed)
    perm = list(range(len(P)))
    rng.shuffle(perm)
    return FinitePoset.from_covers([P.elements[i] for i in range(len(P))],
                                   [(perm[a], perm[b]) for a, b in P.covers])


DIAMOND_EDGES = [(0, 1), (0, 2), (1, 3), (2, 3)]


def diamond():
    return FinitePoset.from_covers(["0", "a", "b", "1"], DIAMOND_EDGES)


class TestConstruction:
    def test_reduction_drops_implied_edge(self):
        P = FinitePoset.from_covers([1, 2, 3], [(0, 1), (1, 2), (0, 2)])
        assert P.covers == ((0, 1), (1, 2))

    def test_antichain(self):
        P = FinitePoset.from_covers(list("abcd"), [])
        assert P.covers == () and P.minimal() == P.maximal() == [0, 1, 2, 3]

    def test_cycle(self):
        with pytest.raises(pc.CycleError):
            FinitePoset.from_covers([0, 1, 2], [(0, 1), (1, 2), (2, 0)])

    def test_b3_figure(self):
        P = rm.generator_closure("B", 3)
        assert len(P) == 15 and len(P.covers) == 24
        figure = {(B3_NODES[a], B3_NODES[b]) for a, b in B3_EDGES}
        assert {(P.elements[i].a, P.elements[j].a) for i, j in P.covers} == figure

    @given(posets())
    def test_reduction_matches_networkx(self, P):
        closure = nx.transitive_closure_dag(as_digraph(P))
        assert set(nx.transitive_reduction(closure).edges) == set(P.covers)
        for x in range(len(P)):
            for y in range(len(P)):
                assert P.leq(x, y) == (x == y or closure.has_edge(x, y))

    @given(posets())
    def test_reduction_idempotent(self, P):
        again = FinitePoset.from_covers(P.elements, P.covers)
        assert again.covers == P.covers


class TestIntervals:
    def test_basic(self):
        C = pc.chain(3)
        assert len(C.interval(1, 1)) == 1
        A = FinitePoset.from_covers([0, 1], [])
        assert len(A.interval(0, 1)) == 0

    def test_interval_in_arc_poset(self):
        A = th.arc_poset(4)
        x, _, z, _ = th.special_diagrams(2)
        assert len(A.interval(A.index(z), A.index(x))) == 7

    def test_induced_keeps_order(self):
        P = diamond()
        S = P.induced([0, 3])
        assert S.covers == ((0, 1),)


class TestGrading:
    def test_arc_poset_graded_by_t(self):
        from arcposet.arc_diagrams import t_index
        P = th.arc_poset(4)
        g = pc.is_graded(P)
        assert g and all(g.rank[i] == t_index(a) for i, a in enumerate(P.elements))
        assert pc.check_rank_function(P, t_index)

    def test_n_shape(self):
        P = FinitePoset.from_covers(list("abcd"), [(0, 1), (2, 1), (2, 3)])
        g = pc.is_graded(P)
        assert g and g.rank == {0: 0, 1: 1, 2: 0, 3: 1}

    def test_redundant_edges_still_chain(self):
        P = FinitePoset.from_covers(list("abc"), [(0, 1), (1, 2), (0, 2)])
        assert pc.is_graded(P).rank == {0: 0, 1: 1, 2: 2}

    def test_not_graded_witness(self):
        # pentagon: chains of length 3 and 2 between the same ends
        R = FinitePoset.from_covers(list("abcde"), [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
        g = pc.is_graded(R)
        assert not g and g.witness["ranks"] in ([1, 2], [2, 1])

    @given(posets())
    def test_rank_means_equal_chain_lengths(self, P):
        g = pc.is_graded(P)
        if not g:
            return
        for x, y in P.comparable_pairs():
            I = P.interval(x, y)
            assert pc.is_chain_graded(I)
            paths = nx.all_simple_paths(as_digraph(P), x, y) if x != y else [[x]]
            assert {len(p) - 1 for p in paths} == {g.rank[y] - g.rank[x]}


class TestLattice:
    def test_boolean(self):
        assert pc.is_lattice(pc.boolean_lattice(3)) == (True, None)

    def test_antichain(self):
        ok, witness = pc.is_lattice(FinitePoset.from_covers([0, 1], []))
        assert not ok and witness[:2] == (0, 1)

    def test_non_lattice_figure(self):
        P = poset_from_named_edges(NON_LATTICE_EDGES)
        ok, (x, y, kind) = pc.is_lattice(P)
        assert not ok
        bound = pc.meet(P, x, y) if kind == "meet" else pc.join(P, x, y)
        assert bound is None

    def test_meet_join(self):
        B = pc.boolean_lattice(2)
        a, b = B.index(frozenset({1})), B.index(frozenset({2}))
        assert B.elements[pc.meet(B, a, b)] == frozenset()
        assert B.elements[pc.join(B, a, b)] == frozenset({1, 2})


class TestMobius:
    def test_examples(self):
        assert pc.mobius(pc.chain(3), 0, 2) == 0
        assert pc.mobius(pc.boolean_lattice(2), 0, 3) == 1
        assert pc.mobius(pc.chain(2), 0, 1) == -1
        with pytest.raises(ValueError):
            pc.mobius(FinitePoset.from_covers([0, 1], []), 0, 1)

    @pytest.mark.parametrize("m", range(1, 5))
    def test_boolean_sign(self, m):
        B = pc.boolean_lattice(m)
        assert pc.mobius(B, 0, len(B) - 1) == (-1) ** m

    @given(posets(max_m=7))
    def test_sums_vanish(self, P):
        for x, y in P.comparable_pairs():
            if x != y:
                assert sum(pc.mobius(P, x, z) for z in P.interval_indices(x, y)) == 0


class TestIsomorphism:
    def test_examples(self):
        A4 = th.arc_poset(4)
        assert pc.are_isomorphic(A4, rm.generator_closure("B", 3))
        assert not pc.are_isomorphic(pc.boolean_lattice(3), pc.chain(3))
        assert pc.are_isomorphic(th.stirling_poset(5, 3), pc.boolean_lattice(4, drop_top=True))

    @given(posets(max_m=7), st.integers(0, 10 ** 6))
    @settings(max_examples=60)
    def test_relabeling_found(self, P, seed):
        Q = shuffled(P, seed)
        f = pc.find_isomorphism(P, Q)
        assert f is not None
        assert {(f[a], f[b]) for a, b in P.covers} == set(Q.covers)

    @given(posets(max_m=6), posets(max_m=6))
    @settings(max_examples=80)
    def test_agrees_with_networkx(self, P, Q):
        assert pc.are_isomorphic(P, Q) == nx.is_isomorphic(as_digraph(P), as_digraph(Q))

    def test_equivalence_on_fixtures(self):
        figure = poset_from_named_edges(NON_LATTICE_EDGES)
        S = th.stirling_poset(5, 2)
        from arcposet.arc_diagrams import parse_diagram
        I = S.interval(S.index(parse_diagram("14|25|3")), S.index(parse_diagram("1|234|5")))
        other = shuffled(figure, 7)
        assert pc.are_isomorphic(figure, I) and pc.are_isomorphic(I, other) and pc.are_isomorphic(figure, other)

    def test_budget(self):
        P = FinitePoset.from_covers(list(range(12)), [])
        Q = FinitePoset.from_covers(list(range(12)), [])
        with pytest.raises(pc.IsomorphismBudgetExceeded):
            pc.find_isomorphism(P, Q, budget=3)


def brute_increasing_chains(P, labels, x, y):
    count = 0
    for path in nx.all_simple_paths(as_digraph(P), x, y):
        seq = [labels[(path[i], path[i + 1])] for i in range(len(path) - 1)]
        count += all(seq[i] <= seq[i + 1] for i in range(len(seq) - 1))
    return count


class TestEL:
    def test_chain(self):
        C = pc.chain(4)
        assert pc.verify_el_labeling(C, {(0, 1): 1, (1, 2): 2, (2, 3): 3})

    def test_double_increasing_diamond(self):
        labels = {(0, 1): 1, (1, 3): 2, (0, 2): 1, (2, 3): 2}
        res = pc.verify_el_labeling(diamond(), labels)
        assert not res and res.reason.startswith("condition (1)") and res.interval == (0, 3)

    def test_good_diamond(self):
        labels = {(0, 1): 1, (1, 3): 2, (0, 2): 2, (2, 3): 1}
        assert pc.verify_el_labeling(diamond(), labels)

    def test_increasing_chain_not_smallest(self):
        labels = {(0, 1): 2, (1, 3): 3, (0, 2): 1, (2, 3): 0}
        res = pc.verify_el_labeling(diamond(), labels)
        assert not res and res.reason.startswith("condition (2)")

    def test_partial_labeling(self):
        with pytest.raises(ValueError):
            pc.verify_el_labeling(diamond(), {(0, 1): 1})

    def test_boolean_lattice_standard_labeling(self):
        B = pc.boolean_lattice(3)
        labels = {(a, b): min(B.elements[b] - B.elements[a]) for a, b in B.covers}
        assert pc.verify_el_labeling(B, labels)

    @given(posets(max_m=6), st.lists(st.integers(0, 2), min_size=15, max_size=15))
    def test_accepted_means_unique_increasing(self, P, raw):
        labels = {c: raw[i % len(raw)] for i, c in enumerate(P.covers)}
        if pc.verify_el_labeling(P, labels):
            for x, y in P.comparable_pairs():
                if x != y:
                    assert brute_increasing_chains(P, labels, x, y) == 1


class TestExport:
    def test_dot_counts(self):
        one = pc.to_dot(pc.chain(1))
        assert one.count("[label=") == 1 and "->" not in one
        three = pc.to_dot(pc.chain(3))
        assert three.count("[label=") == 3 and three.count("->") == 2
        b3 = pc.to_dot(rm.generator_closure("B", 3))
        assert b3.count("[label=") == 15 and b3.count("->") == 24

    def test_dot_layers(self):
        dot = pc.to_dot(pc.boolean_lattice(2))
        assert dot.count("rank=same") == 3

    def test_json_stable(self):
        B = pc.boolean_lattice(2)
        text = pc.to_json(B)
        assert text == pc.to_json(pc.boolean_lattice(2))
        data = json.loads(text)
        assert data["elements"] == ["{}", "{1}", "{2}", "{1,2}"]
        assert data["covers"] == sorted(data["covers"])
