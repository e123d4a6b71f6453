"""Card-set primitives: bitmask hands, colex subset ranking, payoff matrices.

Hands and the deck are subsets of the card values ``1..n`` stored as bit
masks. Equal-cardinality subsets are put in bijection with ``0..C(n,k)-1``
through the combinatorial number system (colexicographic order), which is
what lets value tables index every subgame densely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

#: Largest supported deck. Binomial products C(16,8)^3 still fit in 64 bits,
#: which keeps table indices safe for numpy int64 arithmetic.
MAX_DECK = 16


def _pascal(limit: int) -> list[list[int]]:
    table = [[0] * (limit + 1) for _ in range(limit + 1)]
    for n in range(limit + 1):
        table[n][0] = 1
        for k in range(1, n + 1):
            table[n][k] = table[n - 1][k - 1] + table[n - 1][k]
    return table


_BINOM = _pascal(MAX_DECK)


def binomial(n: int, k: int) -> int:
    """C(n, k) from a precomputed table; zero outside the triangle."""
    if n < 0 or k < 0 or k > n:
        return 0
    if n > MAX_DECK:
        raise ValueError(f"deck size {n} exceeds the supported maximum {MAX_DECK}")
    return _BINOM[n][k]


def sign(x) -> int:
    """Three-way comparison with zero: 1 for positive, -1 for negative, 0 for zero."""
    return (x > 0) - (x < 0)


@dataclass(frozen=True, slots=True)
class CardSet:
    """An immutable set of card values; bit ``i-1`` set iff card ``i`` is present."""

    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise ValueError("card-set mask must be non-negative")

    @classmethod
    def of(cls, *cards: int) -> "CardSet":
        return cls.from_iterable(cards)

    @classmethod
    def from_iterable(cls, cards: Iterable[int]) -> "CardSet":
        bits = 0
        for c in cards:
            if c < 1 or c > MAX_DECK:
                raise ValueError(f"card value {c} outside 1..{MAX_DECK}")
            bit = 1 << (c - 1)
            if bits & bit:
                raise ValueError(f"duplicate card value {c}")
            bits |= bit
        return cls(bits)

    @classmethod
    def full_deck(cls, n: int) -> "CardSet":
        if not 1 <= n <= MAX_DECK:
            raise ValueError(f"deck size must be 1..{MAX_DECK}, got {n}")
        return cls((1 << n) - 1)

    def cards(self) -> tuple[int, ...]:
        """Member card values in ascending order."""
        return tuple(self)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length()
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, card: int) -> bool:
        return card >= 1 and bool(self.bits >> (card - 1) & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def add(self, card: int) -> "CardSet":
        if card in self:
            raise ValueError(f"card {card} already present")
        return CardSet(self.bits | 1 << (card - 1))

    def remove(self, card: int) -> "CardSet":
        if card not in self:
            raise KeyError(f"card {card} not in set")
        return CardSet(self.bits ^ 1 << (card - 1))

    def total(self) -> int:
        """Sum of member card values (the most either player can still win)."""
        return sum(self)

    def max_card(self) -> int:
        return self.bits.bit_length()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"CardSet{{{', '.join(map(str, self))}}}"


def rank_subset(s: CardSet, k: int | None = None) -> int:
    """Position of a k-subset in colexicographic order.

    With members ``c_1 < ... < c_k`` the rank is ``sum_i C(c_i - 1, i)``,
    a bijection onto ``0..C(n,k)-1`` for subsets of ``1..n``. Inverted by
    :func:`unrank_subset`.
    """
    cards = s.cards()
    if k is not None and len(cards) != k:
        raise ValueError(f"expected a {k}-subset, got {len(cards)} cards")
    r = 0
    for i, c in enumerate(cards, start=1):
        r += binomial(c - 1, i)
    return r


def unrank_subset(r: int, k: int, n: int) -> CardSet:
    """Inverse of :func:`rank_subset` for k-subsets of ``1..n``."""
    if k < 0 or k > n:
        raise ValueError(f"subset size {k} out of range for deck 1..{n}")
    if not 0 <= r < binomial(n, k):
        raise ValueError(f"rank {r} out of range [0, C({n},{k})={binomial(n, k)})")
    bits = 0
    c = n
    for i in range(k, 0, -1):
        while binomial(c - 1, i) > r:
            c -= 1
        bits |= 1 << (c - 1)
        r -= binomial(c - 1, i)
        c -= 1
    return CardSet(bits)


@dataclass(frozen=True, slots=True)
class GameState:
    """A subgame: player one's hand, player two's hand and the remaining deck.

    All three sets always have the same cardinality; the game never produces
    anything else, so unequal sizes are rejected at construction.
    """

    one: CardSet
    two: CardSet
    deck: CardSet

    def __post_init__(self) -> None:
        if not len(self.one) == len(self.two) == len(self.deck):
            raise ValueError(
                f"hands and deck must have equal cardinality, got "
                f"|one|={len(self.one)} |two|={len(self.two)} |deck|={len(self.deck)}"
            )

    @property
    def hand_size(self) -> int:
        return len(self.one)

    def swapped(self) -> "GameState":
        """The same position from player two's seat."""
        return GameState(self.two, self.one, self.deck)


@dataclass(frozen=True, slots=True)
class PayoffMatrix:
    """Stage-game payoff matrix, in points to player one (the row player).

    Rows are player one's playable cards in ascending order, columns player
    two's, so strategy indices map deterministically to cards.
    """

    row_cards: tuple[int, ...]
    col_cards: tuple[int, ...]
    entries: tuple[tuple, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_cards), len(self.col_cards)


def payoff_matrix(
    state: GameState,
    upcard: int,
    lookup: Callable[[GameState], object],
) -> PayoffMatrix:
    """Build the stage matrix for *upcard* from one-card-smaller subgame values.

    Entry (i, j) is the upcard's value won or lost on the bid comparison plus
    the continuation value supplied by *lookup* for the reduced position.
    """
    if upcard not in state.deck:
        raise ValueError(f"upcard {upcard} not in deck {state.deck.cards()}")
    deck_rest = state.deck.remove(upcard)
    rows = state.one.cards()
    cols = state.two.cards()
    entries = tuple(
        tuple(
            upcard * sign(vi - yj) + lookup(GameState(state.one.remove(vi), state.two.remove(yj), deck_rest))
            for yj in cols
        )
        for vi in rows
    )
    return PayoffMatrix(rows, cols, entries)
