"""Solver suite and live play engine for the Game of Pure Strategy (Goofspiel).

The public surface is organised in layers:

- :mod:`gops.cards` -- bitmask card sets, colex subset ranking, payoff matrices
- :mod:`gops.matgame` -- zero-sum matrix games (float64 or exact rational)
- :mod:`gops.engine` -- bottom-up value tables over all subgames
- :mod:`gops.storage` -- binary value-table files (GVT format)
- :mod:`gops.play` -- seeded live sessions against the optimal bot
- :mod:`gops.api` -- HTTP/JSON facade used by the web client
- :mod:`gops.cli` -- ``gops`` command line entry point
"""

from .cards import CardSet, GameState, PayoffMatrix, payoff_matrix, rank_subset, unrank_subset, sign
from .matgame import GameSolution, best_response_value, exploitability, find_saddle, solve, solve_2x2, solve_lp
from .engine import SolveConfig, ValueTable, game_value, solve_all, stage_value, strategy_for, subgame_count, verify_table
from .storage import load_table, save_table

__version__ = "0.1.0"

__all__ = [
    "CardSet",
    "GameState",
    "PayoffMatrix",
    "GameSolution",
    "SolveConfig",
    "ValueTable",
    "payoff_matrix",
    "rank_subset",
    "unrank_subset",
    "sign",
    "find_saddle",
    "solve",
    "solve_2x2",
    "solve_lp",
    "best_response_value",
    "exploitability",
    "solve_all",
    "stage_value",
    "game_value",
    "strategy_for",
    "subgame_count",
    "verify_table",
    "save_table",
    "load_table",
    "__version__",
]
