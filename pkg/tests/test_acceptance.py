"""Acceptance suite: one test per criterion, each at its stated tolerance.

A PASS/FAIL line per criterion is printed in the terminal summary (see
conftest). The n=8/n=9 solves are the slow part; their tables are cached
under tests/.cache after the first run.
"""

from __future__ import annotations

import functools
import resource
import time
from fractions import Fraction

import numpy as np
import pytest

from gops.cards import CardSet, GameState, binomial, unrank_subset
from gops.engine import (
    SolveConfig,
    solve_all,
    stage_matrix,
    stage_value,
    strategy_for,
    verify_table,
)
from gops.matgame import exploitability, solve, solve_2x2
from gops.play import (
    EquilibriumPolicy,
    HighestCardPolicy,
    LowestCardPolicy,
    MatchUpcardPolicy,
    UniformRandomPolicy,
    all_deck_orders,
    counter_deterministic,
    play_match,
)
from gops.storage import GvtMagicError, load_table, save_table
from tests.conftest import ACCEPTANCE_RESULTS
from tests.oracles import naive_game_value, support_value

QK = GameState(CardSet.of(2, 4), CardSet.of(1, 3), CardSet.of(12, 13))
LP3 = [[1, -2, 3], [-4, 5, -6], [7, -8, 9]]

# first-move mixtures published for the five-card game, rounded to four digits
TABLE1 = {
    1: (0.0470, 0.8327, 0.1203, 0, 0),
    2: (0.1855, 0, 0.7375, 0.0770, 0),
    3: (0.1182, 0.1188, 0, 0.7630, 0),
    4: (0.1226, 0.07347, 0.1915, 0.2043, 0.4081),
    5: (0.1123, 0.0241, 0, 0, 0.8636),
}


def criterion(name):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            started = time.monotonic()
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_RESULTS.append((name, "FAIL", time.monotonic() - started))
                raise
            ACCEPTANCE_RESULTS.append((name, "PASS", time.monotonic() - started))
            return result

        return wrapper

    return deco


@criterion("closed-form fidelity: 2x2 queen/king game is 12.52 with row (0.48, 0.52)")
def test_closed_form_fidelity():
    exact = solve_2x2([[25, -1], [1, 25]], exact=True)
    assert exact.value == Fraction(626, 50)
    assert exact.row == (Fraction(12, 25), Fraction(13, 25))
    approx = solve_2x2([[25, -1], [1, 25]])
    assert approx.value == pytest.approx(12.52, abs=1e-12)
    assert approx.row[0] == pytest.approx(0.48, abs=1e-12)
    assert approx.row[1] == pytest.approx(0.52, abs=1e-12)


@criterion("worked endgame: game_value({2,4},{1,3},{12,13}) = 626/50, both stages 12.52")
def test_worked_endgame():
    def lookup(state):
        return naive_game_value(state.one.cards(), state.two.cards(), state.deck.cards(), exact=True)

    for upcard in (12, 13):
        assert stage_value(QK, upcard, lookup, exact=True).value == Fraction(626, 50)
    from gops.engine import game_value

    assert game_value(QK, lookup, exact=True) == Fraction(626, 50)
    assert game_value(QK, lambda s: naive_game_value(s.one.cards(), s.two.cards(), s.deck.cards())) == pytest.approx(
        12.52, abs=1e-9
    )


@criterion("LP example: 3x3 matrix solves to value 0 with zero exploitability")
def test_lp_example():
    assert support_value(LP3) == 0  # independent oracle
    exact = solve(LP3, exact=True)
    assert exact.value == 0
    assert exploitability(LP3, exact) == 0
    approx = solve(LP3)
    assert approx.value == pytest.approx(0, abs=1e-9)
    assert exploitability(LP3, approx) <= 1e-9


@criterion("oracle equivalence: n <= 4 tables equal the memoisation-free recursion")
def test_oracle_equivalence():
    for n in range(1, 5):
        exact_table = solve_all(SolveConfig(n=n, arithmetic="rational", keep_all_layers=True))
        float_table = solve_all(SolveConfig(n=n, keep_all_layers=True))
        for j in range(n + 1):
            L = binomial(n, j)
            for rv in range(L):
                one = unrank_subset(rv, j, n)
                for ry in range(L):
                    two = unrank_subset(ry, j, n)
                    for rp in range(L):
                        deck = unrank_subset(rp, j, n)
                        state = GameState(one, two, deck)
                        want = naive_game_value(one.cards(), two.cards(), deck.cards(), exact=True)
                        assert exact_table.value_of(state) == want
                        assert float_table.value_of(state) == pytest.approx(float(want), abs=1e-9)


@criterion("five-card opening agrees with the published mixtures within 1e-3")
def test_first_move_consistency(table5):
    full = CardSet.full_deck(5)
    start = GameState(full, full, full)
    for upcard, published in TABLE1.items():
        matrix = stage_matrix(table5, start, upcard)
        ours = strategy_for(table5, start, upcard)
        assert exploitability(matrix, ours) <= 1e-6
        worst = min(
            sum(published[i] * matrix.entries[i][j] for i in range(5)) for j in range(5)
        )
        assert worst == pytest.approx(float(ours.value), abs=1e-3), f"upcard {upcard}"


@criterion("symmetry suite: n=1..8 tables are antisymmetric, zero-diagonal, bounded, fair")
def test_symmetry_suite(table8):
    started = time.monotonic()
    tables = {n: solve_all(SolveConfig(n=n, keep_all_layers=True)) for n in range(1, 8)}
    tables[8] = table8
    for n, table in tables.items():
        full = CardSet.full_deck(n)
        assert abs(table.value_of(GameState(full, full, full))) <= 1e-9
        for j in range(n + 1):
            L = binomial(n, j)
            arr = np.asarray(table.layers[j]).reshape(L, L, L)
            assert np.abs(arr + arr.transpose(1, 0, 2)).max() <= 1e-9
            assert max(abs(arr[r, r, :]).max() for r in range(L)) == 0
            totals = np.array([unrank_subset(rp, j, n).total() for rp in range(L)], dtype=float)
            assert (np.abs(arr) <= totals[None, None, :] + 1e-9).all()
    elapsed = time.monotonic() - started
    assert elapsed <= 900, f"n<=8 symmetry suite took {elapsed:.0f}s (budget 15 min)"
    solve_secs = table8.stats.get("elapsed")  # absent when the fixture came from cache
    if solve_secs is not None:
        assert solve_secs <= 900, f"n=8 solve took {solve_secs:.0f}s (budget 15 min)"
    peak_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024**2
    assert peak_gb < 2.0, f"peak RSS {peak_gb:.2f} GB"


@criterion("counterstrategy theorem: exhaustive n <= 4, counter wins exactly n-1 rounds")
def test_counterstrategy_theorem():
    opponents = [MatchUpcardPolicy(), HighestCardPolicy(), LowestCardPolicy()]
    for n in range(1, 5):
        for opponent in opponents:
            counter = counter_deterministic(opponent, n)
            for deck in all_deck_orders(n):
                t = play_match(n, counter, opponent, deck_order=deck)
                wins = sum(1 for r in t.rounds if r.points_to == "human")
                assert wins == n - 1, f"n={n} deck={deck}: {wins} wins"


@criterion("persistence: GVT round-trip bit-identical, layer sizes exact, bad magic rejected")
def test_persistence(table5, tmp_path):
    path = tmp_path / "t5.gvt"
    save_table(table5, path)
    loaded = load_table(path)
    for j in range(6):
        want = np.asarray(table5.layers[j], dtype="<f8")
        assert loaded.layers[j].tobytes() == want.tobytes()
        assert len(loaded.layers[j]) == binomial(5, j) ** 3
    assert len(loaded.layers[2]) == 1000
    corrupt = tmp_path / "corrupt.gvt"
    raw = bytearray(path.read_bytes())
    raw[:4] = b"XXXX"
    corrupt.write_bytes(raw)
    with pytest.raises(GvtMagicError):
        load_table(corrupt)


@criterion("scale statement: n=9 solve completes cleanly; larger runs stay out of desk scope")
def test_scale_statement(table9):
    # full-reproduction of the 13-card opening table and the exact n=6..7
    # rationals is out of scope (tens of GB / ~10^6-digit numbers); the
    # evidence here is a clean n=9 build plus the property suites.
    elapsed = table9.stats.get("elapsed")
    if elapsed is not None:
        assert elapsed <= 7200, f"n=9 solve took {elapsed:.0f}s (budget 2 h)"
    report = verify_table(table9, samples=1000, seed=11)
    assert report.ok, report.summary()
    full = CardSet.full_deck(9)
    start = GameState(full, full, full)
    p_nine = float(strategy_for(table9, start, 9).row[8])
    # reported for comparison with the published 0.7475; equilibrium
    # multiplicity means equality is not asserted
    print(f"\nn=9 opening, upcard 9: P(play 9) = {p_nine:.4f} (published comparison point 0.7475)")


@criterion("bot strength: equilibrium bot beats uniform random in >50% of 10,000 matches")
def test_bot_strength(table9):
    bot = EquilibriumPolicy(table9)
    random_bidder = UniformRandomPolicy()
    wins = 0
    for seed in range(10_000):
        t = play_match(9, bot, random_bidder, seed=seed)
        if t.winner == "one":
            wins += 1
    # one-sided binomial test at 99% confidence: reject p <= 0.5 when
    # wins >= 5000 + 2.3263 * sqrt(10000 * 0.25) ~= 5117
    assert wins >= 5117, f"bot won only {wins}/10000"
    print(f"\nbot won {wins}/10000 seeded matches against uniform random")
