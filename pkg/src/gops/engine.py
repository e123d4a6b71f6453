"""Bottom-up solver for every subgame: layered value tables over ranked subsets.

Layer ``j`` holds the value of every subgame whose hands and deck have
cardinality ``j``, stored densely at index ``(rank(V)*C(n,j) + rank(Y))*C(n,j)
+ rank(P)``. Layers are filled in increasing ``j``; each stage game is a
``j x j`` matrix whose entries combine the upcard comparison with layer
``j-1`` values, and the subgame value is the mean of its stage-game values
over the possible upcards.

Player symmetry gives ``f(V,Y,P) = -f(Y,V,P)`` and a zero diagonal, so by
default only unordered hand pairs are solved and the rest is filled by
negation, halving the work.

The float path is the performance-sensitive one. Per hand pair, all deck
choices and upcards are evaluated as one numpy batch; games with a pure
saddle point (and every 2x2 game) are resolved vectorised, and only the
remainder falls through to the simplex.
"""

from __future__ import annotations

import os
import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Literal, Sequence

import numpy as np

from . import matgame
from .cards import GameState, PayoffMatrix, binomial, payoff_matrix, rank_subset, sign, unrank_subset
from .matgame import DEFAULT_TOL, GameSolution

Arithmetic = Literal["float64", "rational"]

#: Largest hand size the table-less fallback evaluator accepts (memoised
#: recursion over at most sum_j C(12,j)^3-ish reachable substates stays small
#: through 6).
DIRECT_EVAL_MAX_HAND = 6


class EngineError(Exception):
    """Base class for solver errors."""


class LayerMissingError(EngineError):
    """A query needs a layer that was not retained (keep_all_layers=False)."""


class TableStateMismatchError(EngineError):
    """A queried state does not fit the table (card out of range, bad sizes)."""


class ResourceExhaustedError(EngineError):
    """Memory ran out; carries how far the solve got."""

    def __init__(self, layer: int, index: int, message: str):
        super().__init__(f"layer {layer}, pair index {index}: {message}")
        self.layer = layer
        self.index = index


def subgame_count(n: int) -> int:
    """Number of stage games a full solve of deck size ``n`` must handle
    without symmetry halving: ``sum_j j * C(n,j)^3``."""
    if n < 0:
        raise ValueError("deck size must be non-negative")
    return sum(j * binomial(n, j) ** 3 for j in range(n + 1))


@dataclass(frozen=True)
class SolveConfig:
    """Configuration for :func:`solve_all`.

    ``n`` up to 13 is accepted; float mode is recommended up to 10 and
    rational mode refuses above ``max_rational_n`` (values grow to hundreds
    of digits immediately and to ~10^6 digits by n=7). ``keep_all_layers``
    retains every layer for querying and persistence instead of the
    two-layer scheme. ``spill_dir`` backs layers with memory-mapped files so
    tables larger than RAM can still be built and saved.
    """

    n: int
    arithmetic: Arithmetic = "float64"
    workers: int = 1
    tolerance: float = DEFAULT_TOL
    keep_all_layers: bool = False
    use_symmetry: bool = True
    max_rational_n: int = 5
    spill_dir: str | None = None
    progress: Callable[[dict], None] | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 13:
            raise ValueError(f"deck size must be 1..13, got {self.n}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.arithmetic not in ("float64", "rational"):
            raise ValueError(f"unknown arithmetic {self.arithmetic!r}")
        if self.arithmetic == "rational" and self.n > self.max_rational_n:
            raise ValueError(
                f"rational mode refuses n={self.n} > max_rational_n={self.max_rational_n}; "
                "raise max_rational_n explicitly if you really want this"
            )


@dataclass
class ValueTable:
    """Layered subgame values for one deck size.

    ``layers[j]`` is either ``None`` (dropped) or a dense array of length
    ``C(n,j)**3``: float64 ndarray/memmap in float mode, a list of Fractions
    in rational mode.
    """

    n: int
    arithmetic: Arithmetic
    layers: list
    stats: dict = field(default_factory=dict)

    @property
    def stage_solves(self) -> int:
        return self.stats.get("stage_solves", 0)

    def layer_size(self, j: int) -> int:
        return binomial(self.n, j) ** 3

    def has_layer(self, j: int) -> bool:
        return 0 <= j <= self.n and self.layers[j] is not None

    @property
    def complete(self) -> bool:
        return all(self.has_layer(j) for j in range(self.n + 1))

    def covers(self, state: GameState, *, for_strategy: bool = False) -> bool:
        """Whether this table can answer a value (or strategy) query for *state*."""
        top = max((s.max_card() for s in (state.one, state.two, state.deck) if s), default=0)
        if top > self.n:
            return False
        j = state.hand_size
        if for_strategy:
            return j >= 1 and self.has_layer(j - 1)
        return self.has_layer(j)

    def value_of(self, state: GameState):
        """Stored value of a subgame, by table lookup."""
        j = state.hand_size
        if j > self.n or max(
            (s.max_card() for s in (state.one, state.two, state.deck) if s), default=0
        ) > self.n:
            raise TableStateMismatchError(f"state does not fit a {self.n}-card table")
        if not self.has_layer(j):
            raise LayerMissingError(
                f"layer {j} was not retained; solve with keep_all_layers=True"
            )
        L = binomial(self.n, j)
        idx = (rank_subset(state.one) * L + rank_subset(state.two)) * L + rank_subset(state.deck)
        layer = self.layers[j]
        if self.arithmetic == "rational":
            return layer[idx]
        return float(layer[idx])


# --------------------------------------------------------------------------
# layer geometry


def _layer_tables(n: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-layer lookup tables.

    Returns ``(vals, subr)`` where row ``r`` describes the rank-``r``
    j-subset: ``vals[r]`` its card values ascending and ``subr[r][i]`` the
    (j-1)-subset rank of the set minus its i-th element.
    """
    import itertools

    L = binomial(n, j)
    vals = np.zeros((L, max(j, 1)), dtype=np.int64)
    subr = np.zeros((L, max(j, 1)), dtype=np.int64)
    for combo in itertools.combinations(range(1, n + 1), j):
        r = 0
        for i, c in enumerate(combo, start=1):
            r += binomial(c - 1, i)
        vals[r, :j] = combo
        for i in range(j):
            rest = combo[:i] + combo[i + 1 :]
            rr = 0
            for ii, c in enumerate(rest, start=1):
                rr += binomial(c - 1, ii)
            subr[r, i] = rr
    return vals, subr


_TABLE_CACHE: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}


def _cached_tables(n: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    key = (n, j)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = _layer_tables(n, j)
    return _TABLE_CACHE[key]


# --------------------------------------------------------------------------
# float-mode layer kernel


def _solve_rows_float(
    prev: np.ndarray,
    cur: np.ndarray,
    n: int,
    j: int,
    rows: Sequence[int],
    symmetric: bool,
    tol: float,
) -> tuple[int, int, int, int]:
    """Solve all stage games for hand-pairs whose first rank is in *rows*.

    Writes subgame values (and their negated mirrors when *symmetric*) into
    *cur*. Returns (stage_solves, saddle, closed2x2, simplex) counts.
    """
    vals, subr = _cached_tables(n, j)
    L = binomial(n, j)
    L1 = binomial(n, j - 1)
    fvals = vals.astype(np.float64)
    stage = saddle_n = closed = simplex_n = 0
    lp_value = matgame.solve_value
    deck_gather = subr[:, :, None, None]  # (L, j, 1, 1) ranks of P \ {P_k}
    up_vals = fvals[:, :, None, None]  # (L, j, 1, 1) upcard values

    for rv in rows:
        srv = subr[rv][:, None] * L1
        vv = vals[rv]
        ry_iter = range(rv + 1, L) if symmetric else range(L)
        for ry in ry_iter:
            sgn = np.sign(vv[:, None] - vals[ry][None, :]).astype(np.float64)
            base = (srv + subr[ry][None, :]) * L1  # (j, j)
            mats = prev[base[None, None, :, :] + deck_gather]
            mats += up_vals * sgn[None, None, :, :]
            # mats[p, k, i, jj]: deck rank p, upcard position k
            maximin = mats.min(axis=3).max(axis=2)
            minimax = mats.max(axis=2).min(axis=2)
            sv = maximin
            need = (minimax - maximin) > tol
            count = L * j
            stage += count
            hard = int(need.sum())
            saddle_n += count - hard
            if hard:
                if j == 2:
                    a = mats[..., 0, 0]
                    b = mats[..., 0, 1]
                    c = mats[..., 1, 0]
                    d = mats[..., 1, 1]
                    det = a - b - c + d
                    cf = np.divide(a * d - b * c, det, out=np.zeros_like(det), where=need)
                    sv = np.where(need, cf, sv)
                    closed += hard
                else:
                    for p, k in np.argwhere(need):
                        sv[p, k] = lp_value(mats[p, k].tolist(), tol=tol)
                    simplex_n += hard
            f = sv.mean(axis=1)
            off = (rv * L + ry) * L
            cur[off : off + L] = f
            if symmetric:
                moff = (ry * L + rv) * L
                cur[moff : moff + L] = -f
    return stage, saddle_n, closed, simplex_n


def _worker_task(args) -> tuple[int, int, int, int]:
    (n, j, prev_path, cur_path, start, step, symmetric, tol) = args
    L = binomial(n, j)
    L1 = binomial(n, j - 1)
    prev = np.memmap(prev_path, dtype=np.float64, mode="r", shape=(L1**3,))
    cur = np.memmap(cur_path, dtype=np.float64, mode="r+", shape=(L**3,))
    try:
        stats = _solve_rows_float(prev, cur, n, j, range(start, L, step), symmetric, tol)
        cur.flush()
    finally:
        del prev, cur
    return stats


# --------------------------------------------------------------------------
# solve_all


def _alloc_layer(size: int, backing_dir: str | None, j: int) -> np.ndarray:
    if backing_dir is None:
        return np.zeros(size, dtype=np.float64)
    path = os.path.join(backing_dir, f"layer_{j}.f64")
    return np.memmap(path, dtype=np.float64, mode="w+", shape=(size,))


def _release_layer(arr, backing_dir: str | None, temp_backing: bool, j: int) -> None:
    if isinstance(arr, np.memmap):
        path = arr.filename
        del arr
        if temp_backing and path and os.path.exists(path):
            os.remove(path)


def solve_all(config: SolveConfig) -> ValueTable:
    """Fill every layer bottom-up and return the value table.

    Within a layer, states are independent: the pair list is mapped (serially
    or across workers) with read-only access to layer ``j-1`` and exclusive
    writes to disjoint slices of layer ``j``. Pair order is ascending rank,
    purely for reproducible progress; results do not depend on it.
    """
    if config.arithmetic == "rational":
        return _solve_all_rational(config)
    return _solve_all_float(config)


def _solve_all_float(config: SolveConfig) -> ValueTable:
    n = config.n
    workers = config.workers
    started = time.monotonic()

    temp_backing = config.spill_dir is None and workers > 1
    if config.spill_dir is not None:
        backing_dir = config.spill_dir
        os.makedirs(backing_dir, exist_ok=True)
        tmp = None
    elif temp_backing:
        tmp = tempfile.TemporaryDirectory(prefix="gops-layers-")
        backing_dir = tmp.name
    else:
        backing_dir = None
        tmp = None

    layers: list = [None] * (n + 1)
    stats = {"stage_solves": 0, "saddle": 0, "closed2x2": 0, "simplex": 0, "layer_seconds": []}
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None

    try:
        try:
            prev = _alloc_layer(1, backing_dir, 0)
        except MemoryError as exc:
            raise ResourceExhaustedError(0, 0, "allocating layer 0") from exc
        if isinstance(prev, np.memmap):
            prev.flush()
        layers[0] = prev
        for j in range(1, n + 1):
            layer_start = time.monotonic()
            L = binomial(n, j)
            size = L**3
            try:
                cur = _alloc_layer(size, backing_dir, j)
            except MemoryError as exc:
                raise ResourceExhaustedError(j, 0, f"allocating {size} values") from exc
            pairs = L * (L + 1) // 2 if config.use_symmetry else L * L
            try:
                if pool is not None and pairs >= 64:
                    ntasks = min(L, workers * 4)
                    futures = [
                        pool.submit(
                            _worker_task,
                            (
                                n,
                                j,
                                layers[j - 1].filename,
                                cur.filename,
                                start,
                                ntasks,
                                config.use_symmetry,
                                config.tolerance,
                            ),
                        )
                        for start in range(ntasks)
                    ]
                    parts = [f.result() for f in futures]
                else:
                    parts = [
                        _solve_rows_float(
                            layers[j - 1], cur, n, j, range(L), config.use_symmetry, config.tolerance
                        )
                    ]
            except MemoryError as exc:
                raise ResourceExhaustedError(j, 0, "solving layer") from exc
            for stage, sad, clo, sim in parts:
                stats["stage_solves"] += stage
                stats["saddle"] += sad
                stats["closed2x2"] += clo
                stats["simplex"] += sim
            layers[j] = cur
            if not config.keep_all_layers and j - 2 >= 0:
                _release_layer(layers[j - 2], backing_dir, temp_backing, j - 2)
                layers[j - 2] = None
            stats["layer_seconds"].append(round(time.monotonic() - layer_start, 3))
            if config.progress is not None:
                config.progress(
                    {
                        "layer": j,
                        "states": size,
                        "stage_solves": stats["stage_solves"],
                        "seconds": stats["layer_seconds"][-1],
                    }
                )
        if temp_backing:
            # materialise retained layers in RAM before the files vanish
            for j in range(n + 1):
                if layers[j] is not None:
                    arr = np.array(layers[j], dtype=np.float64, copy=True)
                    _release_layer(layers[j], backing_dir, temp_backing, j)
                    layers[j] = arr
    finally:
        if pool is not None:
            pool.shutdown()
        if tmp is not None:
            tmp.cleanup()

    stats["elapsed"] = round(time.monotonic() - started, 3)
    return ValueTable(n=n, arithmetic="float64", layers=layers, stats=stats)


def _solve_all_rational(config: SolveConfig) -> ValueTable:
    n = config.n
    started = time.monotonic()
    layers: list = [None] * (n + 1)
    layers[0] = [Fraction(0)]
    stats = {"stage_solves": 0, "saddle": 0, "closed2x2": 0, "simplex": 0, "layer_seconds": []}
    zero = Fraction(0)

    for j in range(1, n + 1):
        layer_start = time.monotonic()
        L = binomial(n, j)
        L1 = binomial(n, j - 1)
        vals, subr = _cached_tables(n, j)
        prev = layers[j - 1]
        cur = [zero] * (L**3)
        for rv in range(L):
            vv = vals[rv]
            srv = subr[rv]
            ry_iter = range(rv + 1, L) if config.use_symmetry else range(L)
            for ry in ry_iter:
                vy = vals[ry]
                sry = subr[ry]
                sgn = [[sign(int(vv[i]) - int(vy[jj])) for jj in range(j)] for i in range(j)]
                base = [[(int(srv[i]) * L1 + int(sry[jj])) * L1 for jj in range(j)] for i in range(j)]
                for rp in range(L):
                    acc = zero
                    for k in range(j):
                        pk = int(vals[rp][k])
                        drank = int(subr[rp][k])
                        mat = [
                            [pk * sgn[i][jj] + prev[base[i][jj] + drank] for jj in range(j)]
                            for i in range(j)
                        ]
                        acc += matgame.solve_value(mat, exact=True)
                        stats["stage_solves"] += 1
                    f = acc / j
                    cur[(rv * L + ry) * L + rp] = f
                    if config.use_symmetry:
                        cur[(ry * L + rv) * L + rp] = -f
        layers[j] = cur
        if not config.keep_all_layers and j - 2 >= 0:
            layers[j - 2] = None
        stats["layer_seconds"].append(round(time.monotonic() - layer_start, 3))
        if config.progress is not None:
            config.progress(
                {"layer": j, "states": L**3, "stage_solves": stats["stage_solves"], "seconds": stats["layer_seconds"][-1]}
            )

    stats["elapsed"] = round(time.monotonic() - started, 3)
    return ValueTable(n=n, arithmetic="rational", layers=layers, stats=stats)


# --------------------------------------------------------------------------
# queries


def stage_value(
    state: GameState,
    upcard: int,
    lookup: Callable[[GameState], object],
    *,
    exact: bool = False,
    tol: float = DEFAULT_TOL,
) -> GameSolution:
    """Solve the stage game for *upcard*; *lookup* supplies the one-card-smaller
    subgame values."""
    return matgame.solve(payoff_matrix(state, upcard, lookup), exact=exact, tol=tol)


def game_value(
    state: GameState,
    lookup: Callable[[GameState], object],
    *,
    exact: bool = False,
    tol: float = DEFAULT_TOL,
):
    """Subgame value: the mean of the stage-game values over all upcards."""
    deck = state.deck.cards()
    if not deck:
        return Fraction(0) if exact else 0.0
    total = sum(stage_value(state, u, lookup, exact=exact, tol=tol).value for u in deck)
    if exact:
        return Fraction(total) / len(deck)
    return total / len(deck)


def stage_matrix(table: ValueTable, state: GameState, upcard: int):
    """Stage payoff matrix gathered straight from a float layer.

    Same entries as ``payoff_matrix(state, upcard, table.value_of)`` but
    built with the solver kernel's index tables, which matters when the bot
    is queried thousands of times per second.
    """
    n, j = table.n, state.hand_size
    vals, subr = _cached_tables(n, j)
    L1 = binomial(n, j - 1)
    rv = rank_subset(state.one)
    ry = rank_subset(state.two)
    rp = rank_subset(state.deck)
    k = state.deck.cards().index(upcard)
    prev = np.asarray(table.layers[j - 1])
    base = (subr[rv][:, None] * L1 + subr[ry][None, :]) * L1 + subr[rp][k]
    rows = vals[rv][:j]
    cols = vals[ry][:j]
    sgn = np.sign(rows[:, None] - cols[None, :]).astype(np.float64)
    mats = prev[base] + upcard * sgn
    return PayoffMatrix(
        tuple(int(c) for c in rows),
        tuple(int(c) for c in cols),
        tuple(tuple(float(v) for v in row) for row in mats),
    )


def strategy_for(table: ValueTable, state: GameState, upcard: int) -> GameSolution:
    """Equilibrium mixture and value for one stage decision, recomputed from
    the persisted layer below (strategies are never stored)."""
    j = state.hand_size
    if j == 0:
        raise TableStateMismatchError("no decision in an empty state")
    if upcard not in state.deck:
        raise ValueError(f"upcard {upcard} not in deck {state.deck.cards()}")
    if not table.has_layer(j - 1):
        raise LayerMissingError(f"strategy for hand size {j} needs layer {j - 1}")
    if not table.covers(state, for_strategy=True):
        raise TableStateMismatchError(f"state does not fit a {table.n}-card table")
    if table.arithmetic == "rational":
        return stage_value(state, upcard, table.value_of, exact=True)
    return matgame.solve(stage_matrix(table, state, upcard))


# --------------------------------------------------------------------------
# table-less evaluation (small endgames, e.g. the queen/king position)


def _direct_lookup(exact: bool, memo: dict) -> Callable[[GameState], object]:
    def value(state: GameState):
        key = (state.one.bits, state.two.bits, state.deck.bits)
        if key in memo:
            return memo[key]
        mirror = (state.two.bits, state.one.bits, state.deck.bits)
        if mirror in memo:
            v = -memo[mirror]
        elif state.one.bits == state.two.bits:
            v = Fraction(0) if exact else 0.0
        else:
            v = game_value(state, value, exact=exact)
        memo[key] = v
        return v

    return value


def direct_value(state: GameState, *, exact: bool = False):
    """Value of a small subgame by memoised recursion, no table required."""
    return _direct_lookup(exact, {})(state)


def direct_solution(state: GameState, upcard: int, *, exact: bool = False) -> GameSolution:
    """Stage mixture and value by memoised recursion, no table required."""
    if state.hand_size == 0:
        raise ValueError("no decision in an empty state")
    lookup = _direct_lookup(exact, {})
    return stage_value(state, upcard, lookup, exact=exact)


# --------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Violation:
    kind: str
    layer: int
    index: tuple[int, int, int]
    detail: str


@dataclass
class VerifyReport:
    n: int
    arithmetic: Arithmetic
    entries_checked: int = 0
    games_sampled: int = 0
    violations: list[Violation] = field(default_factory=list)
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations and not self.truncated

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return (
            f"table n={self.n} [{self.arithmetic}]: {status}; "
            f"{self.entries_checked} entries checked, {self.games_sampled} stage games sampled"
        )


_MAX_VIOLATIONS = 10_000


def _deck_totals(n: int, j: int) -> np.ndarray:
    vals, _ = _cached_tables(n, j)
    return vals.sum(axis=1).astype(np.float64)


def verify_table(
    table: ValueTable,
    *,
    samples: int = 1000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    exploit_tol: float = 1e-6,
) -> VerifyReport:
    """Audit a table's invariants.

    Checks antisymmetry under swapping the hands, the zero diagonal, the
    bound ``|f| <= sum(deck)``, and equilibrium quality (exploitability) on a
    seeded sample of reconstructed stage games. Violations are report
    content, not errors.
    """
    report = VerifyReport(n=table.n, arithmetic=table.arithmetic)
    exact = table.arithmetic == "rational"

    def add(kind: str, layer: int, index, detail: str) -> None:
        if len(report.violations) >= _MAX_VIOLATIONS:
            report.truncated = True
            return
        report.violations.append(Violation(kind, layer, tuple(int(x) for x in index), detail))

    for j in range(table.n + 1):
        if not table.has_layer(j):
            continue
        L = binomial(table.n, j)
        if exact:
            layer = table.layers[j]
            totals = _deck_totals(table.n, j)
            for rv in range(L):
                for ry in range(L):
                    base = (rv * L + ry) * L
                    mbase = (ry * L + rv) * L
                    for rp in range(L):
                        v = layer[base + rp]
                        if rv < ry and v + layer[mbase + rp] != 0:
                            add("antisymmetry", j, (rv, ry, rp), f"f={v}, mirror={layer[mbase + rp]}")
                        if rv == ry and v != 0:
                            add("zero-diagonal", j, (rv, ry, rp), f"f={v}")
                        if abs(v) > int(totals[rp]):
                            add("value-bound", j, (rv, ry, rp), f"|{v}| > {int(totals[rp])}")
            report.entries_checked += L**3
            continue
        arr = np.asarray(table.layers[j], dtype=np.float64).reshape(L, L, L)
        asym = arr + arr.transpose(1, 0, 2)
        for rv, ry, rp in np.argwhere(np.abs(asym) > tol):
            if rv == ry:
                add("zero-diagonal", j, (rv, ry, rp), f"f={arr[rv, ry, rp]!r}")
            elif rv < ry:
                add(
                    "antisymmetry",
                    j,
                    (rv, ry, rp),
                    f"f={arr[rv, ry, rp]!r}, mirror={arr[ry, rv, rp]!r}",
                )
        totals = _deck_totals(table.n, j)
        for rv, ry, rp in np.argwhere(np.abs(arr) > totals[None, None, :] + tol):
            add("value-bound", j, (rv, ry, rp), f"|{arr[rv, ry, rp]!r}| > {totals[rp]}")
        report.entries_checked += L**3

    eligible = [j for j in range(1, table.n + 1) if table.has_layer(j - 1)]
    if eligible and samples > 0:
        rng = random.Random(seed)
        for _ in range(samples):
            j = rng.choice(eligible)
            L = binomial(table.n, j)
            rv, ry, rp = (rng.randrange(L) for _ in range(3))
            state = GameState(
                unrank_subset(rv, j, table.n),
                unrank_subset(ry, j, table.n),
                unrank_subset(rp, j, table.n),
            )
            upcard = rng.choice(state.deck.cards())
            sol = stage_value(state, upcard, table.value_of, exact=exact)
            gap = matgame.exploitability(payoff_matrix(state, upcard, table.value_of), sol)
            report.games_sampled += 1
            bad = (gap != 0) if exact else (gap > exploit_tol)
            if bad:
                add("exploitability", j, (rv, ry, rp), f"upcard {upcard}: gap {gap!r}")
    return report
