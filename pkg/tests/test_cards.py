"""Card sets, colex ranking and payoff-matrix construction."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gops.cards import (
    CardSet,
    GameState,
    binomial,
    payoff_matrix,
    rank_subset,
    sign,
    unrank_subset,
)
from tests.oracles import colex_subsets, naive_game_value


def one_card_values(state: GameState) -> int:
    """1x1 subgame values: the larger card wins the lone deck card."""
    (a,) = state.one.cards()
    (b,) = state.two.cards()
    (c,) = state.deck.cards()
    return c * sign(a - b)


class TestSign:
    def test_positive(self):
        assert sign(3) == 1

    def test_zero(self):
        assert sign(0) == 0

    def test_negative(self):
        assert sign(-7) == -1

    @given(st.integers(-1000, 1000))
    def test_odd_symmetry(self, x):
        assert sign(-x) == -sign(x)


class TestCardSet:
    def test_round_trip(self):
        s = CardSet.of(3, 1, 7)
        assert s.cards() == (1, 3, 7)
        assert len(s) == 3
        assert 3 in s and 2 not in s

    def test_full_deck(self):
        assert CardSet.full_deck(5).cards() == (1, 2, 3, 4, 5)

    def test_remove_and_add(self):
        s = CardSet.of(2, 4)
        assert s.remove(2).cards() == (4,)
        assert s.add(9).cards() == (2, 4, 9)
        with pytest.raises(KeyError):
            s.remove(5)
        with pytest.raises(ValueError):
            s.add(4)

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            CardSet.of(2, 2)

    def test_total(self):
        assert CardSet.of(12, 13).total() == 25


class TestRanking:
    def test_first_subset(self):
        assert rank_subset(CardSet.of(1, 2, 3)) == 0

    def test_second_subset(self):
        # oracle: position in the colex enumeration of all 3-subsets
        assert colex_subsets(13, 3).index((1, 2, 4)) == 1
        assert rank_subset(CardSet.of(1, 2, 4)) == 1

    def test_last_subset(self):
        assert colex_subsets(13, 3).index((11, 12, 13)) == 285
        assert binomial(13, 3) == 286
        assert rank_subset(CardSet.of(11, 12, 13)) == 285

    def test_unrank_examples(self):
        assert unrank_subset(0, 3, 13).cards() == (1, 2, 3)
        assert unrank_subset(1, 3, 13).cards() == (1, 2, 4)
        assert unrank_subset(285, 3, 13).cards() == (11, 12, 13)

    def test_matches_colex_enumeration(self):
        for n in (5, 8):
            for k in range(n + 1):
                for r, combo in enumerate(colex_subsets(n, k)):
                    assert rank_subset(CardSet.from_iterable(combo)) == r
                    assert unrank_subset(r, k, n).cards() == combo

    def test_bijection_exhaustive_n10(self):
        for k in range(11):
            seen = set()
            for combo in itertools.combinations(range(1, 11), k):
                r = rank_subset(CardSet.from_iterable(combo))
                assert 0 <= r < binomial(10, k)
                seen.add(r)
                assert unrank_subset(r, k, 10).cards() == combo
            assert len(seen) == binomial(10, k)

    @given(st.integers(1, 13).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
    def test_rank_unrank_inverse(self, case):
        n, cards = case
        s = CardSet.from_iterable(cards)
        r = rank_subset(s)
        assert unrank_subset(r, len(s), n) == s

    def test_cardinality_mismatch(self):
        with pytest.raises(ValueError):
            rank_subset(CardSet.of(1, 2), 3)

    def test_unrank_out_of_range(self):
        with pytest.raises(ValueError):
            unrank_subset(286, 3, 13)
        with pytest.raises(ValueError):
            unrank_subset(-1, 2, 5)


class TestGameState:
    def test_equal_cardinality_enforced(self):
        with pytest.raises(ValueError):
            GameState(CardSet.of(1, 2), CardSet.of(3), CardSet.of(4))

    def test_swapped(self):
        s = GameState(CardSet.of(1), CardSet.of(2), CardSet.of(3))
        assert s.swapped() == GameState(CardSet.of(2), CardSet.of(1), CardSet.of(3))


class TestPayoffMatrix:
    def test_queen_king_endgame(self):
        # hand evaluation using the four +-12 one-card subgame values
        state = GameState(CardSet.of(2, 4), CardSet.of(1, 3), CardSet.of(12, 13))
        m = payoff_matrix(state, 13, one_card_values)
        assert m.row_cards == (2, 4)
        assert m.col_cards == (1, 3)
        assert m.entries == ((25, -1), (1, 25))

    def test_one_by_one(self):
        state = GameState(CardSet.of(2), CardSet.of(1), CardSet.of(5))
        m = payoff_matrix(state, 5, lambda s: 0)
        assert m.entries == ((5,),)

    def test_tie_transfers_nothing(self):
        state = GameState(CardSet.of(3), CardSet.of(3), CardSet.of(9))
        m = payoff_matrix(state, 9, lambda s: 0)
        assert m.entries == ((0,),)

    def test_upcard_not_in_deck(self):
        state = GameState(CardSet.of(2), CardSet.of(1), CardSet.of(5))
        with pytest.raises(ValueError):
            payoff_matrix(state, 4, lambda s: 0)

    def test_lookup_miss_propagates(self):
        state = GameState(CardSet.of(2), CardSet.of(1), CardSet.of(5))
        with pytest.raises(KeyError):
            payoff_matrix(state, 5, {}.__getitem__)


def _naive_lookup(state: GameState):
    return naive_game_value(state.one.cards(), state.two.cards(), state.deck.cards())


@st.composite
def small_states(draw, max_size=3, n=6):
    size = draw(st.integers(1, max_size))
    pick = lambda: CardSet.from_iterable(draw(st.sets(st.integers(1, n), min_size=size, max_size=size)))
    return GameState(pick(), pick(), pick())


class TestPayoffProperties:
    @given(small_states())
    def test_identical_hands_antisymmetric(self, state):
        state = GameState(state.one, state.one, state.deck)
        for upcard in state.deck:
            m = payoff_matrix(state, upcard, _naive_lookup).entries
            for i in range(len(m)):
                for j in range(len(m)):
                    assert m[i][j] == pytest.approx(-m[j][i], abs=1e-9)

    @given(small_states())
    def test_swap_transposes_and_negates(self, state):
        for upcard in state.deck:
            m = payoff_matrix(state, upcard, _naive_lookup).entries
            mt = payoff_matrix(state.swapped(), upcard, _naive_lookup).entries
            for i in range(len(m)):
                for j in range(len(m)):
                    assert mt[j][i] == pytest.approx(-m[i][j], abs=1e-9)

    @given(small_states())
    def test_entry_bound(self, state):
        for upcard in state.deck:
            bound = upcard + state.deck.remove(upcard).total()
            for row in payoff_matrix(state, upcard, _naive_lookup).entries:
                for v in row:
                    assert abs(v) <= bound + 1e-9
