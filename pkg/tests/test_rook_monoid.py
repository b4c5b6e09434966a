import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from arcposet import arc_diagrams as ad
from arcposet import rook_monoid as rm
from arcposet.rook_monoid import Rook


@st.composite
def rooks(draw, max_n=7, kind="R"):
    n = draw(st.integers(1, max_n))
    values = list(range(1, n + 1))
    a = []
    for j in range(1, n + 1):
        cap = {"R": n, "B": j, "Bnil": j - 1}[kind]
        choices = [0] + [v for v in values if v <= cap and v not in a]
        a.append(draw(st.sampled_from(choices)))
    return Rook(tuple(a))


def brute_partial_injections(n, cap):
    return {a for a in itertools.product(range(n + 1), repeat=n)
            if all(v <= cap(j) for j, v in enumerate(a, 1))
            and len([v for v in a if v]) == len({v for v in a if v})}


class TestRook:
    def test_predicates(self):
        x = Rook((0, 1, 3))
        assert x.n == 3 and x.rank == 2
        assert x.is_upper and not x.is_strictly_upper and not x.is_idempotent
        assert Rook((0, 2, 0)).is_idempotent
        assert Rook((0, 1, 2)).is_strictly_upper

    def test_invalid(self):
        with pytest.raises(ValueError):
            Rook((1, 1))
        with pytest.raises(ValueError):
            Rook((3, 0))

    def test_text_and_json(self):
        x = rm.parse_rook("(4,0,5,0,3,1)")
        assert str(x) == "(4,0,5,0,3,1)"
        assert x.to_json() == {"n": 6, "a": [4, 0, 5, 0, 3, 1]}
        assert rm.parse_rook('{"n": 6, "a": [4, 0, 5, 0, 3, 1]}') == x
        assert x.matrix()[3][0] == 1

    def test_parse_error(self):
        with pytest.raises(rm.RookParseError) as info:
            rm.parse_rook("1,y")
        assert "^" in info.value.caret()


class TestLength:
    @pytest.mark.parametrize("a, ell", [
        ((4, 0, 5, 0, 3, 1), 21), ((4, 0, 5, 0, 6, 1), 22), ((4, 0, 5, 0, 3, 2), 22),
        ((2, 6, 5, 0, 4, 1, 7), 35), ((7, 6, 5, 0, 4, 1, 2), 42), ((0, 0, 0), 0),
    ])
    def test_worked_values(self, a, ell):
        assert rm.length(Rook(a)) == ell == rm.length_via_coinv(Rook(a))

    def test_coinversions(self):
        x = Rook((4, 0, 2, 3))
        assert rm.coinversions(x) == 1
        assert rm.length_via_coinv(x) == 13 - 1 == rm.length(x)

    def test_identity_permutation(self):
        assert rm.length(Rook((1, 2, 3))) == 6

    @given(rooks())
    def test_two_formulas_agree(self, x):
        assert rm.length(x) == rm.length_via_coinv(x)

    @given(st.permutations(range(1, 7)))
    def test_permutation_length(self, w):
        assert rm.length(Rook(tuple(w))) == comb(7, 2) + rm.inversions(w)


class TestMoves:
    def test_raise_moves_from_zero(self):
        assert {Rook((1, 0)), Rook((0, 1)), Rook((0, 2)), Rook((2, 0))} <= rm.ppr_moves_up(Rook((0, 0)))

    def test_swap_moves(self):
        ups = rm.ppr_moves_up(Rook((0, 0, 1, 2)))
        assert {Rook((0, 1, 0, 2)), Rook((0, 0, 2, 1)), Rook((1, 0, 0, 2)), Rook((0, 2, 1, 0))} <= ups

    def test_strictly_upper_top_has_no_moves(self):
        top = Rook((0, 1, 2, 3))
        assert not {y for y in rm.ppr_moves_up(top) if y.is_strictly_upper}
        assert rm.covers_up(top, "Bnil") == set()

    @given(rooks())
    def test_moves_go_up(self, x):
        assert all(rm.length(y) > rm.length(x) for y in rm.ppr_moves_up(x))


class TestCovers:
    def test_worked_covers(self):
        ups = rm.covers_up(Rook((4, 0, 5, 0, 3, 1)))
        assert {Rook((4, 0, 5, 0, 6, 1)), Rook((4, 0, 5, 0, 3, 2))} <= ups
        ups = rm.covers_up(Rook((2, 6, 5, 0, 4, 1, 7)))
        assert Rook((4, 6, 5, 0, 2, 1, 7)) in ups
        assert Rook((7, 6, 5, 0, 4, 1, 2)) not in ups

    @pytest.mark.parametrize("n", range(1, 7))
    def test_zero_rook_in_strict_universe(self, n):
        assert rm.covers_up(Rook((0,) * n), "Bnil") == ({Rook((0,) * (n - 1) + (1,))} if n > 1 else set())

    def test_zero_raise_needs_full_tail(self):
        # raising the first zero of (1,0,0) straight to 2 skips (1,0,2)
        x, y, mid = Rook((1, 0, 0)), Rook((1, 2, 0)), Rook((1, 0, 2))
        assert rm.length(y) == rm.length(x) + 2
        assert y not in rm.covers_up(x)
        assert rm.bruhat_leq_oracle(x, mid) and rm.bruhat_leq_oracle(mid, y)

    @given(rooks(max_n=5))
    def test_cover_lengths(self, x):
        assert all(rm.length(y) == rm.length(x) + 1 for y in rm.covers_up(x))

    def test_wrong_universe(self):
        with pytest.raises(ValueError):
            rm.covers_up(Rook((2, 0)), "B")

    def test_rank_slice_covers(self):
        ups = rm.covers_up(Rook((0, 1)), "P", 1)
        assert ups == {Rook((1, 0)), Rook((0, 2))}

    @pytest.mark.parametrize("kind, n", [("R", 3), ("R", 4), ("B", 4), ("Bnil", 5)])
    def test_covers_are_closure_reduction(self, kind, n):
        P = rm.generator_closure(kind, n)
        lemma = {(i, P.index(y)) for i, x in enumerate(P.elements) for y in rm.covers_up(x, kind)}
        assert lemma == set(P.covers)


class TestOrder:
    def test_oracle_examples(self):
        x = Rook((0, 0, 1, 2))
        assert rm.bruhat_leq_oracle(x, x)
        assert rm.bruhat_leq_oracle(x, Rook((0, 1, 2, 0)))
        assert not rm.bruhat_leq_oracle(Rook((0, 0, 2, 0)), x)
        with pytest.raises(ValueError):
            rm.bruhat_leq_oracle(Rook((0,)), x)

    def test_rank_monotone(self):
        P = rm.generator_closure("R", 3)
        for lo, hi in P.comparable_pairs():
            assert P.elements[lo].rank <= P.elements[hi].rank

    @pytest.mark.parametrize("n", range(1, 5))
    def test_idempotent_order_is_support_inclusion(self, n):
        E = rm.enumerate_universe("E", n)
        for e, f in itertools.product(E, repeat=2):
            assert rm.bruhat_leq_oracle(e, f) == rm.idempotent_leq(e, f)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_equal_rank_idempotents_incomparable(self, n):
        for k in range(n + 1):
            Ek = rm.enumerate_universe("Ek", n, k)
            assert all(rm.length(e) == rm.idempotent_length(n, k) for e in Ek)
            for e, f in itertools.combinations(Ek, 2):
                assert not rm.bruhat_leq_oracle(e, f) and not rm.bruhat_leq_oracle(f, e)


class TestBijections:
    def test_phi(self):
        intro = ad.parse_diagram("18|2569|37|4")
        assert rm.phi(intro) == Rook((0, 0, 0, 0, 2, 5, 3, 1, 6))
        assert rm.phi(ad.ArcDiagram(4)) == Rook((0, 0, 0, 0))
        assert rm.phi(ad.ArcDiagram(2, ((1, 2),))) == Rook((0, 1))
        with pytest.raises(ValueError):
            rm.phi_inv(Rook((1, 0)))

    @given(rooks(kind="Bnil"))
    def test_phi_round_trip(self, x):
        assert rm.phi(rm.phi_inv(x)) == x

    def test_drop_first(self):
        assert rm.drop_first(Rook((0, 1, 0))) == Rook((1, 0))
        assert rm.length(Rook((0, 1, 0))) == rm.length(Rook((1, 0))) == 2
        assert rm.drop_first(Rook((0, 0, 0))) == Rook((0, 0))
        assert rm.drop_first(Rook((0, 0, 1, 2))) == Rook((0, 1, 2))
        with pytest.raises(ValueError):
            rm.drop_first(Rook((1, 0)))

    @given(rooks(kind="Bnil"))
    def test_drop_first_keeps_length(self, x):
        y = rm.drop_first(x)
        assert rm.length(y) == rm.length(x) and y.is_upper and rm.lift(y) == x


class TestEnumeration:
    @pytest.mark.parametrize("n", range(0, 5))
    def test_against_brute_force(self, n):
        caps = {"R": lambda j: n, "B": lambda j: j, "Bnil": lambda j: j - 1}
        for kind, cap in caps.items():
            els = [x.a for x in rm.enumerate_universe(kind, n)]
            assert len(els) == len(set(els))
            assert set(els) == brute_partial_injections(n, cap)

    def test_named_sizes(self):
        assert len(rm.enumerate_universe("B", 3)) == 15
        # rank-one slice of B_3 has S(4,3) = 6 elements; S(4,2) = 7 belongs to rank two
        assert [len(rm.enumerate_universe("P", 3, k)) for k in range(4)] == [1, 6, 7, 1]
        assert sorted(x.a for x in rm.enumerate_universe("Ek", 3, 1)) == [(0, 0, 3), (0, 2, 0), (1, 0, 0)]
        assert len(rm.enumerate_universe("R", 2)) == 7

    def test_bounds(self):
        with pytest.raises(ValueError):
            rm.enumerate_universe("R", 9)
        with pytest.raises(ValueError):
            rm.enumerate_universe("P", 3)

    def test_strata_and_idempotents(self):
        e0 = rm.min_of_P(3, 2)
        assert e0 == Rook((0, 1, 2)) and rm.length(e0) == 3
        assert rm.min_of_P(4, 0) == Rook((0, 0, 0, 0))
        assert rm.min_of_P(4, 4) == Rook((1, 2, 3, 4))
        assert rm.idempotent_length(3, 3) == 6
        assert rm.idempotent_length(3, 1) == 3
        assert rm.idempotent_length(5, 0) == 0
        assert rm.fixed_points(Rook((1, 0, 3))) == frozenset({1, 3})
