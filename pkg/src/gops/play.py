"""Live play: seeded shuffles, split-on-tie scoring, the equilibrium bot.

A :class:`Session` is a human-versus-bot match. The bot's bid for each round
is drawn and committed the moment the upcard is revealed, before the human
moves, which enforces the simultaneous-reveal rule mechanically and makes
advice queries safe: nothing the human learns can change a bid that is
already locked in.

Scores are kept in half-point integer units so tie splits stay exact; the
zero-sum margin (player one minus player two, the solver's objective) is
always a whole number of points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, NamedTuple, Protocol, Sequence

from .cards import CardSet, GameState
from .engine import LayerMissingError, ValueTable, strategy_for

_MASK64 = (1 << 64) - 1


@dataclass
class Rng:
    """splitmix64: trivially portable, bit-exactly specified.

    The modulo shuffle bias at n <= 13 is far below 2^-50 and accepted.
    """

    state: int

    def __post_init__(self) -> None:
        self.state &= _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53


def shuffled_deck(n: int, rng: Rng) -> tuple[int, ...]:
    """Fisher-Yates over (1..n): i from n-1 down to 1, swap with j = u64 mod (i+1)."""
    deck = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = rng.next_u64() % (i + 1)
        deck[i], deck[j] = deck[j], deck[i]
    return tuple(deck)


class RoundView(NamedTuple):
    """One finished round as seen by a policy: its own bid vs the opponent's."""

    upcard: int
    my_bid: int
    opp_bid: int


class Policy(Protocol):
    """A bidder. Deterministic policies must depend only on the observable
    history and the upcard (both hands are public knowledge in this game)."""

    def bid(
        self,
        my_hand: CardSet,
        opp_hand: CardSet,
        upcard: int,
        history: tuple[RoundView, ...],
        rng: Rng | None,
    ) -> int: ...


class ScriptedPolicy:
    """Plays a fixed list of bids, one per round."""

    def __init__(self, bids: Sequence[int]):
        self.bids = tuple(bids)

    def bid(self, my_hand, opp_hand, upcard, history, rng) -> int:
        return self.bids[len(history)]


class MatchUpcardPolicy:
    """Bids the card equal to the upcard (always available: upcards are distinct)."""

    def bid(self, my_hand, opp_hand, upcard, history, rng) -> int:
        return upcard


class HighestCardPolicy:
    def bid(self, my_hand, opp_hand, upcard, history, rng) -> int:
        return max(my_hand)


class LowestCardPolicy:
    def bid(self, my_hand, opp_hand, upcard, history, rng) -> int:
        return min(my_hand)


class UniformRandomPolicy:
    """Uniform over the remaining hand, from the supplied RNG stream."""

    def bid(self, my_hand, opp_hand, upcard, history, rng) -> int:
        cards = my_hand.cards()
        return cards[rng.next_u64() % len(cards)]


class EquilibriumPolicy:
    """Samples the equilibrium mixture recomputed from a value table."""

    def __init__(self, table: ValueTable):
        self.table = table

    def bid(self, my_hand, opp_hand, upcard, history, rng) -> int:
        deck = CardSet.full_deck(self.table.n)
        for past in history:
            deck = deck.remove(past.upcard)
        state = GameState(my_hand, opp_hand, deck)
        mixture = strategy_for(self.table, state, upcard).row
        return sample_bid(mixture, my_hand, rng)


def counter_deterministic(opponent: Policy, n: int) -> Policy:
    """The classic counter to any deterministic bidder: predict its bid, then
    answer the top card with the lowest and everything else with one higher.

    Over a whole game the counter's bids are a shifted permutation of the
    opponent's, so the prescribed card is always still in hand. It wins every
    round except the one where the opponent bids n (a loss for n >= 2, a tie
    at n = 1), leaving a margin of sum(upcards) - 2*(that round's upcard).
    """

    class _Counter:
        def bid(self, my_hand, opp_hand, upcard, history, rng) -> int:
            swapped = tuple(RoundView(h.upcard, h.opp_bid, h.my_bid) for h in history)
            predicted = opponent.bid(opp_hand, my_hand, upcard, swapped, None)
            return 1 if predicted == n else predicted + 1

    return _Counter()


def sample_bid(strategy: Sequence[float], hand: CardSet, rng: Rng) -> int:
    """Inverse-CDF draw: first card (ascending) whose cumulative probability
    exceeds ``u = next_u64() >> 11 times 2^-53``."""
    cards = hand.cards()
    if len(strategy) != len(cards):
        raise ValueError(f"strategy has {len(strategy)} entries for a {len(cards)}-card hand")
    u = rng.next_unit()
    acc = 0.0
    for card, p in zip(cards, strategy):
        acc += float(p)
        if acc > u:
            return card
    return cards[-1]


PointsTo = Literal["human", "bot", "split"]


@dataclass(frozen=True, slots=True)
class RoundRecord:
    upcard: int
    human_bid: int
    bot_bid: int
    points_to: PointsTo


class PlayError(Exception):
    pass


class IllegalBidError(PlayError):
    pass


class SessionFinishedError(PlayError):
    pass


@dataclass
class Session:
    """A live human-versus-bot match. Single-writer: operations on one
    session must be serialised by the caller."""

    id: str
    n: int
    human_hand: CardSet
    bot_hand: CardSet
    deck_order: tuple[int, ...]
    round: int
    scores_half: list[int]  # [human, bot] in half-points
    history: list[RoundRecord]
    bot_policy: Policy
    rng: Rng
    pending_bot_bid: int | None

    @property
    def finished(self) -> bool:
        return self.round > self.n

    @property
    def upcard(self) -> int | None:
        return None if self.finished else self.deck_order[self.round - 1]

    @property
    def deck_remaining(self) -> CardSet:
        """Unresolved deck cards as a set (the current upcard included)."""
        return CardSet.from_iterable(self.deck_order[self.round - 1 :])

    def scores(self) -> tuple[float, float]:
        return self.scores_half[0] / 2, self.scores_half[1] / 2


def _bot_history(session: Session) -> tuple[RoundView, ...]:
    return tuple(RoundView(r.upcard, r.bot_bid, r.human_bid) for r in session.history)


def _commit_bot_bid(session: Session) -> None:
    session.pending_bot_bid = session.bot_policy.bid(
        session.bot_hand,
        session.human_hand,
        session.upcard,
        _bot_history(session),
        session.rng,
    )


def new_session(
    n: int,
    seed: int,
    bot_policy: Policy,
    *,
    session_id: str = "local",
    deck_order: Sequence[int] | None = None,
) -> Session:
    """Deal a fresh match: shuffle from the seed, reveal the first upcard and
    commit the bot's first bid immediately.

    ``deck_order`` fixes the deal explicitly (replays, tests); the seed then
    only drives the bot's sampling.
    """
    if not 1 <= n <= 13:
        raise ValueError(f"deck size must be 1..13, got {n}")
    if isinstance(bot_policy, EquilibriumPolicy):
        if bot_policy.table.n != n:
            raise ValueError(f"bot table is for n={bot_policy.table.n}, session wants n={n}")
        for j in range(n):
            if not bot_policy.table.has_layer(j):
                raise LayerMissingError(f"equilibrium bot needs layer {j}; table dropped it")
    rng = Rng(seed)
    if deck_order is None:
        deck = shuffled_deck(n, rng)
    else:
        deck = tuple(deck_order)
        if sorted(deck) != list(range(1, n + 1)):
            raise ValueError(f"deck order must be a permutation of 1..{n}")
    session = Session(
        id=session_id,
        n=n,
        human_hand=CardSet.full_deck(n),
        bot_hand=CardSet.full_deck(n),
        deck_order=deck,
        round=1,
        scores_half=[0, 0],
        history=[],
        bot_policy=bot_policy,
        rng=rng,
        pending_bot_bid=None,
    )
    _commit_bot_bid(session)
    return session


def submit_bid(session: Session, human_card: int) -> RoundRecord:
    """Resolve a round against the pre-committed bot bid and advance."""
    if session.finished:
        raise SessionFinishedError("session is finished")
    if human_card not in session.human_hand:
        raise IllegalBidError(f"card {human_card} is not in your hand")
    upcard = session.upcard
    bot_card = session.pending_bot_bid
    if human_card > bot_card:
        points_to: PointsTo = "human"
        session.scores_half[0] += 2 * upcard
    elif bot_card > human_card:
        points_to = "bot"
        session.scores_half[1] += 2 * upcard
    else:
        points_to = "split"
        session.scores_half[0] += upcard
        session.scores_half[1] += upcard
    record = RoundRecord(upcard, human_card, bot_card, points_to)
    session.history.append(record)
    session.human_hand = session.human_hand.remove(human_card)
    session.bot_hand = session.bot_hand.remove(bot_card)
    session.round += 1
    if session.finished:
        session.pending_bot_bid = None
    else:
        _commit_bot_bid(session)
    return record


@dataclass(frozen=True)
class MatchResult:
    winner: Literal["human", "bot", "draw"]
    scores: tuple[float, float]
    zero_sum_margin: int


def final_result(session: Session) -> MatchResult:
    """Winner by split-scoring totals, with the zero-sum margin alongside."""
    if not session.finished:
        raise PlayError(f"session still in round {session.round} of {session.n}")
    h, b = session.scores_half
    winner = "human" if h > b else "bot" if b > h else "draw"
    return MatchResult(winner, session.scores(), (h - b) // 2)


# --------------------------------------------------------------------------
# policy-versus-policy harness (tests, benchmarks, bot strength)


@dataclass(frozen=True)
class MatchTranscript:
    n: int
    deck_order: tuple[int, ...]
    rounds: tuple[RoundRecord, ...]  # human_bid = player one, bot_bid = player two
    scores: tuple[float, float]
    zero_sum_margin: int
    winner: Literal["one", "two", "draw"]


def play_match(
    n: int,
    policy_one: Policy,
    policy_two: Policy,
    *,
    deck_order: Sequence[int] | None = None,
    seed: int | None = None,
) -> MatchTranscript:
    """Self-play between two policies over one deal.

    The deck comes either from an explicit order or from a seeded shuffle;
    each policy gets its own RNG stream derived from the seed.
    """
    base = Rng(0 if seed is None else seed)
    if deck_order is None:
        if seed is None:
            raise ValueError("need deck_order or seed")
        deck = shuffled_deck(n, base)
    else:
        deck = tuple(deck_order)
        if sorted(deck) != list(range(1, n + 1)):
            raise ValueError(f"deck order must be a permutation of 1..{n}")
    rng_one = Rng(base.next_u64())
    rng_two = Rng(base.next_u64())

    hand_one = hand_two = CardSet.full_deck(n)
    hist_one: list[RoundView] = []
    hist_two: list[RoundView] = []
    rounds: list[RoundRecord] = []
    half = [0, 0]
    for upcard in deck:
        bid_one = policy_one.bid(hand_one, hand_two, upcard, tuple(hist_one), rng_one)
        bid_two = policy_two.bid(hand_two, hand_one, upcard, tuple(hist_two), rng_two)
        if bid_one not in hand_one:
            raise IllegalBidError(f"player one bid {bid_one} not in hand")
        if bid_two not in hand_two:
            raise IllegalBidError(f"player two bid {bid_two} not in hand")
        if bid_one > bid_two:
            points_to: PointsTo = "human"
            half[0] += 2 * upcard
        elif bid_two > bid_one:
            points_to = "bot"
            half[1] += 2 * upcard
        else:
            points_to = "split"
            half[0] += upcard
            half[1] += upcard
        rounds.append(RoundRecord(upcard, bid_one, bid_two, points_to))
        hist_one.append(RoundView(upcard, bid_one, bid_two))
        hist_two.append(RoundView(upcard, bid_two, bid_one))
        hand_one = hand_one.remove(bid_one)
        hand_two = hand_two.remove(bid_two)
    winner = "one" if half[0] > half[1] else "two" if half[1] > half[0] else "draw"
    return MatchTranscript(
        n=n,
        deck_order=deck,
        rounds=tuple(rounds),
        scores=(half[0] / 2, half[1] / 2),
        zero_sum_margin=(half[0] - half[1]) // 2,
        winner=winner,
    )


def all_deck_orders(n: int):
    """Every permutation of 1..n (exhaustive tests at small n)."""
    return itertools.permutations(range(1, n + 1))
