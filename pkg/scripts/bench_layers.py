#!/usr/bin/env python3
"""Time full solves over a range of deck sizes and print per-layer costs.

Usage: python scripts/bench_layers.py [max_n] [workers]
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gops.engine import SolveConfig, solve_all, subgame_count


def main() -> int:
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    workers = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    for n in range(1, max_n + 1):
        started = time.monotonic()
        table = solve_all(SolveConfig(n=n, workers=workers))
        elapsed = time.monotonic() - started
        s = table.stats
        rate = s["stage_solves"] / elapsed if elapsed > 0 else float("inf")
        print(
            f"n={n:2d}  {elapsed:8.2f}s  {s['stage_solves']:>10} stage games "
            f"(unhalved {subgame_count(n):>10})  {rate:>9.0f}/s  "
            f"saddle {s['saddle']}  closed {s['closed2x2']}  simplex {s['simplex']}"
        )
        print(f"       layers: {s['layer_seconds']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
