"""Shared fixtures: solved tables are expensive, so they are session-scoped
and cached on disk under tests/.cache (delete the directory to force fresh
solves)."""

from __future__ import annotations

import multiprocessing
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from gops.engine import SolveConfig, solve_all, verify_table
from gops.storage import load_table, save_table

settings.register_profile(
    "gops",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gops")

CACHE_DIR = Path(__file__).parent / ".cache"

WORKERS = min(4, multiprocessing.cpu_count())

#: (criterion, PASS/FAIL, seconds) tuples appended by tests/test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[str, str, float]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, seconds in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status} [{seconds:7.2f}s] {name}")


def solved_table(n: int, *, workers: int = 1, cache: bool = False):
    """Solve (or load from cache) a float table with every layer retained."""
    if not cache:
        return solve_all(SolveConfig(n=n, workers=workers, keep_all_layers=True))
    CACHE_DIR.mkdir(exist_ok=True)
    path = CACHE_DIR / f"n{n}.gvt"
    if path.exists():
        table = load_table(path, expect_n=n)
        # guard against stale or hand-edited cache files
        if verify_table(table, samples=50, seed=7).ok:
            return table
        path.unlink()
    table = solve_all(SolveConfig(n=n, workers=workers, keep_all_layers=True))
    save_table(table, path)
    return table


@pytest.fixture(scope="session")
def table3():
    return solved_table(3)


@pytest.fixture(scope="session")
def table4():
    return solved_table(4)


@pytest.fixture(scope="session")
def table5():
    return solved_table(5, cache=True)


@pytest.fixture(scope="session")
def table4_rational():
    return solve_all(SolveConfig(n=4, arithmetic="rational", keep_all_layers=True))


@pytest.fixture(scope="session")
def table8():
    return solved_table(8, workers=WORKERS, cache=True)


@pytest.fixture(scope="session")
def table9():
    return solved_table(9, workers=WORKERS, cache=True)


@pytest.fixture(scope="session")
def table5_path(table5, tmp_path_factory):
    path = tmp_path_factory.mktemp("tables") / "n5.gvt"
    save_table(table5, path)
    return path
