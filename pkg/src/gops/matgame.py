"""Two-player zero-sum matrix games: saddle points, 2x2 closed form, simplex.

The row player maximises, the column player minimises. Every solver returns
a :class:`GameSolution` whose quality is certified by :func:`exploitability`,
the best-response gap of the strategy pair; it is zero exactly at a Nash
equilibrium. Games with several equilibria may come back with any optimal
vertex, so correctness is always judged by the gap, never by comparing
mixtures.

Two arithmetic modes are supported. Float64 is the default; ``exact=True``
switches to :class:`fractions.Fraction` throughout, in which case values,
strategies and the exploitability gap are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence, Union

Scalar = Union[int, float, Fraction]
MixedStrategy = tuple  # probabilities per playable card, ascending card order

#: Default float tolerance for pivot selection, saddle comparisons and
#: feasibility checks.
DEFAULT_TOL = 1e-9

Method = Literal["trivial", "saddle", "closed2x2", "simplex"]


@dataclass(frozen=True, slots=True)
class GameSolution:
    """Game value plus equilibrium mixed strategies for both players."""

    value: Scalar
    row: MixedStrategy
    col: MixedStrategy
    method: Method


def _rows_of(matrix) -> list[list]:
    """Accept a PayoffMatrix, a 2-d sequence, or anything with ``.entries``."""
    entries = getattr(matrix, "entries", matrix)
    rows = [list(r) for r in entries]
    if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise ValueError("matrix must be non-empty and rectangular")
    return rows


def _as_exact(rows: list[list]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


def _as_float(rows: list[list]) -> list[list[float]]:
    return [[float(v) for v in row] for row in rows]


def _infer_tol(rows: list[list], tol) -> Scalar:
    if any(isinstance(v, float) for row in rows for v in row):
        return tol
    return 0


def find_saddle(matrix, tol: float = DEFAULT_TOL):
    """First entry (smallest row, then column) that is its row's minimum and
    its column's maximum, or ``None``.

    Such an entry is a pure-strategy equilibrium for the row maximiser. The
    comparison tolerance applies only to float matrices; integer and rational
    matrices are compared exactly.
    """
    rows = _rows_of(matrix)
    eps = _infer_tol(rows, tol)
    row_mins = [min(r) for r in rows]
    col_maxs = [max(r[j] for r in rows) for j in range(len(rows[0]))]
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v <= row_mins[i] + eps and v >= col_maxs[j] - eps:
                return i, j, v
    return None


def _closed_2x2(rows: list[list]):
    (a, b), (c, d) = rows
    denom = a - b - c + d
    value = (a * d - b * c) / denom
    row = ((d - c) / denom, (a - b) / denom)
    col = ((d - b) / denom, (a - c) / denom)
    return value, row, col


def solve_2x2(matrix, *, exact: bool = False, tol: float = DEFAULT_TOL) -> GameSolution:
    """Closed-form solution of a saddle-free 2x2 game.

    value = (ad - bc) / (a - b - c + d); the mixtures are the equalising
    distributions. Matrices with a saddle point violate the denominator's
    sign structure and are rejected; dispatch those through
    :func:`find_saddle` or :func:`solve` instead.
    """
    rows = _rows_of(matrix)
    if len(rows) != 2 or len(rows[0]) != 2:
        raise ValueError("solve_2x2 requires a 2x2 matrix")
    rows = _as_exact(rows) if exact else _as_float(rows)
    if find_saddle(rows, tol) is not None:
        raise ValueError("matrix has a saddle point; the closed form does not apply")
    value, row, col = _closed_2x2(rows)
    return GameSolution(value, row, col, "closed2x2")


def _simplex(rows: list[list], exact: bool, tol: float):
    """Solve the game by simplex on the column player's bounded program.

    Payoffs are shifted so every entry is >= 1, making the shifted value
    positive; ``max sum(w)`` subject to ``M'w <= 1, w >= 0`` is then feasible
    (w = 0) and bounded, so no phase-1 is needed. Bland's smallest-index rule
    picks both the entering and, on ratio ties, the leaving variable, which
    guarantees termination on the many degenerate matrices this game
    produces. The row player's mixture is read off the final objective row.
    """
    m, n = len(rows), len(rows[0])
    if exact:
        zero, one = Fraction(0), Fraction(1)
        eps = Fraction(0)
    else:
        zero, one = 0.0, 1.0
        eps = tol
    lo = min(min(r) for r in rows)
    delta = one - lo if lo < 1 else zero

    width = n + m + 1
    tab = []
    for i in range(m):
        row = [rows[i][j] + delta for j in range(n)] + [zero] * (m + 1)
        row[n + i] = one
        row[width - 1] = one
        tab.append(row)
    obj = [-one] * n + [zero] * (m + 1)
    basis = list(range(n, n + m))

    while True:
        enter = -1
        for j in range(n + m):
            if obj[j] < -eps:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > eps:
                ratio = tab[i][width - 1] / coef
                if best is None or ratio < best:
                    best, leave = ratio, i
                elif ratio == best and basis[i] < basis[leave]:
                    leave = i
        if leave < 0:  # pragma: no cover - impossible after the shift
            raise ArithmeticError("unbounded game program")
        prow = tab[leave]
        pivot = prow[enter]
        if pivot != one:
            tab[leave] = prow = [v / pivot for v in prow]
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f:
                    r = tab[i]
                    tab[i] = [r[j] - f * prow[j] for j in range(width)]
        f = obj[enter]
        if f:
            obj = [obj[j] - f * prow[j] for j in range(width)]
        basis[leave] = enter

    total = obj[width - 1]  # optimal sum(w) = 1 / shifted value
    shifted = one / total
    col = [zero] * n
    for i in range(m):
        if basis[i] < n:
            col[basis[i]] = tab[i][width - 1] * shifted
    row = [obj[n + i] * shifted for i in range(m)]
    value = shifted - delta
    return value, row, col


def _clean_distribution(probs: list, exact: bool) -> tuple:
    if exact:
        return tuple(probs)
    clipped = [p if p > 0.0 else 0.0 for p in probs]
    total = sum(clipped)
    return tuple(p / total for p in clipped)


def solve_lp(matrix, *, exact: bool = False, tol: float = DEFAULT_TOL) -> GameSolution:
    """Solve any m x n game directly by simplex (no closed-form dispatch)."""
    rows = _rows_of(matrix)
    rows = _as_exact(rows) if exact else _as_float(rows)
    value, row, col = _simplex(rows, exact, tol)
    return GameSolution(
        value,
        _clean_distribution(row, exact),
        _clean_distribution(col, exact),
        "simplex",
    )


def _pure(size: int, index: int, exact: bool) -> tuple:
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    return tuple(one if i == index else zero for i in range(size))


def solve(matrix, *, exact: bool = False, tol: float = DEFAULT_TOL) -> GameSolution:
    """Dispatch wrapper: trivial 1x1, saddle point, 2x2 closed form, simplex."""
    rows = _rows_of(matrix)
    rows = _as_exact(rows) if exact else _as_float(rows)
    m, n = len(rows), len(rows[0])
    if m == 1 and n == 1:
        return GameSolution(rows[0][0], _pure(1, 0, exact), _pure(1, 0, exact), "trivial")
    saddle = find_saddle(rows, tol)
    if saddle is not None:
        i, j, v = saddle
        return GameSolution(v, _pure(m, i, exact), _pure(n, j, exact), "saddle")
    if m == 2 and n == 2:
        value, row, col = _closed_2x2(rows)
        return GameSolution(value, row, col, "closed2x2")
    return solve_lp(rows, exact=exact, tol=tol)


def solve_value(matrix, *, exact: bool = False, tol: float = DEFAULT_TOL) -> Scalar:
    """Game value only; same dispatch as :func:`solve` without strategy objects.

    This is the hot path of the table builder, so it avoids every allocation
    it can.
    """
    rows = _rows_of(matrix)
    if exact:
        rows = _as_exact(rows)
    m, n = len(rows), len(rows[0])
    eps = tol if not exact else 0
    maximin = max(min(r) for r in rows)
    minimax = min(max(r[j] for r in rows) for j in range(n))
    if minimax - maximin <= eps:
        return maximin
    if m == 2 and n == 2:
        (a, b), (c, d) = rows
        return (a * d - b * c) / (a - b - c + d)
    value, _, _ = _simplex(rows, exact, tol)
    return value


def best_response_value(matrix, opponent: Sequence, side: Literal["row", "col"]):
    """Best pure reply and its payoff against a fixed opponent mixture.

    ``side="row"``: the row player replies to a column mixture (maximises).
    ``side="col"``: the column player replies to a row mixture (minimises).
    Ties go to the smallest index.
    """
    rows = _rows_of(matrix)
    m, n = len(rows), len(rows[0])
    if side == "row":
        if len(opponent) != n:
            raise ValueError(f"opponent mixture has {len(opponent)} entries, expected {n}")
        payoffs = [sum(rows[i][j] * opponent[j] for j in range(n)) for i in range(m)]
        best = max(payoffs)
    elif side == "col":
        if len(opponent) != m:
            raise ValueError(f"opponent mixture has {len(opponent)} entries, expected {m}")
        payoffs = [sum(opponent[i] * rows[i][j] for i in range(m)) for j in range(n)]
        best = min(payoffs)
    else:
        raise ValueError(f"side must be 'row' or 'col', got {side!r}")
    return best, payoffs.index(best)


def exploitability(matrix, solution: GameSolution):
    """Best-response gap of a strategy pair; zero exactly at equilibrium."""
    rows = _rows_of(matrix)
    m, n = len(rows), len(rows[0])
    if len(solution.row) != m or len(solution.col) != n:
        raise ValueError("solution dimensions do not match the matrix")
    vs_col, _ = best_response_value(rows, solution.col, "row")
    vs_row, _ = best_response_value(rows, solution.row, "col")
    gap = vs_col - vs_row
    if isinstance(gap, float):
        return gap if gap > 0.0 else 0.0
    return gap if gap > 0 else gap * 0
