#!/usr/bin/env python3
"""Print the opening-move strategy table for a solved deck, paper-style.

Rows are the card to play, columns the revealed upcard, entries the
equilibrium probability (four decimals, zeros as 0). Also reports the
probability of answering the top upcard with the top card, the number the
nine-card discussion revolves around.

Usage: python scripts/first_move_report.py TABLE.gvt
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gops.cards import CardSet, GameState
from gops.engine import strategy_for
from gops.storage import load_table


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    table = load_table(sys.argv[1])
    n = table.n
    full = CardSet.full_deck(n)
    start = GameState(full, full, full)
    columns = {u: strategy_for(table, start, u) for u in range(1, n + 1)}

    width = 7
    print("card".rjust(5) + "".join(str(u).rjust(width) for u in range(1, n + 1)))
    for i, card in enumerate(range(1, n + 1)):
        cells = []
        for u in range(1, n + 1):
            p = float(columns[u].row[i])
            cells.append(("0" if p == 0 else f"{p:.4f}").rjust(width))
        print(str(card).rjust(5) + "".join(cells))
    print()
    for u in range(1, n + 1):
        print(f"upcard {u}: stage value {float(columns[u].value):+.6f}")
    top = float(columns[n].row[n - 1])
    print(f"\nP(play {n} on upcard {n}) = {top:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
