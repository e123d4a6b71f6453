"""HTTP/JSON facade over live play and table queries, for the web client.

Sessions live in memory with idle expiry. Requests to one session are
serialised by a per-session lock; the value table is shared read-only. The
wire projection of a session exposes only public information: in this game
every played card is revealed, so both remaining hands are common knowledge,
but the pending bot bid, the RNG state and the deck's hidden order never
leave the server.

Endpoints (all JSON):

- ``POST /api/v1/sessions``        {n, seed?, hints?} -> 201 {session}
- ``GET  /api/v1/sessions/{id}``   -> {session}
- ``POST /api/v1/sessions/{id}/bid`` {card} -> {round_record, session}
- ``GET  /api/v1/sessions/{id}/advice`` -> {probs, value} (403 if hints off)
- ``GET  /api/v1/value?v=..&y=..&p=..`` -> {value}
- ``GET  /api/v1/strategy?v=..&y=..&p=..&upcard=k`` -> {probs, value}

Card lists are comma-separated integers. States not covered by the loaded
table fall back to direct evaluation for hand sizes up to
``engine.DIRECT_EVAL_MAX_HAND`` (small endgames such as queen/king), so the
worked examples stay reachable without a 13-card table.
"""

from __future__ import annotations

import json
import mimetypes
import re
import threading
import time
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .cards import CardSet, GameState
from .engine import (
    DIRECT_EVAL_MAX_HAND,
    ValueTable,
    direct_solution,
    direct_value,
    strategy_for,
)
from .play import (
    EquilibriumPolicy,
    IllegalBidError,
    RoundRecord,
    Session,
    SessionFinishedError,
    final_result,
    new_session,
    submit_bid,
)

DEFAULT_TTL_SECONDS = 3600.0


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class _Entry:
    session: Session
    hints: bool
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)


class GopsApi:
    """Transport-independent endpoint logic (the HTTP handler stays thin)."""

    def __init__(self, table: ValueTable, *, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.table = table
        self.ttl = ttl_seconds
        self._sessions: dict[str, _Entry] = {}
        self._registry_lock = threading.Lock()

    # -- session plumbing ---------------------------------------------------

    def _sweep(self) -> None:
        now = time.monotonic()
        with self._registry_lock:
            dead = [sid for sid, e in self._sessions.items() if now - e.last_access > self.ttl]
            for sid in dead:
                del self._sessions[sid]

    def _entry(self, session_id: str) -> _Entry:
        with self._registry_lock:
            entry = self._sessions.get(session_id)
        if entry is None:
            raise ApiError(404, f"unknown session {session_id}")
        entry.last_access = time.monotonic()
        return entry

    @staticmethod
    def _round_json(record: RoundRecord) -> dict:
        return {
            "upcard": record.upcard,
            "human_bid": record.human_bid,
            "bot_bid": record.bot_bid,
            "points_to": record.points_to,
        }

    def _session_json(self, entry: _Entry) -> dict:
        s = entry.session
        payload = {
            "id": s.id,
            "n": s.n,
            "round": s.round,
            "upcard": s.upcard,
            "your_hand": list(s.human_hand.cards()),
            "bot_hand": list(s.bot_hand.cards()),
            "scores": {"you": s.scores()[0], "bot": s.scores()[1]},
            "history": [self._round_json(r) for r in s.history],
            "finished": s.finished,
            "hints": entry.hints,
            "result": None,
        }
        if s.finished:
            r = final_result(s)
            payload["result"] = {
                "winner": r.winner,
                "scores": {"you": r.scores[0], "bot": r.scores[1]},
                "zero_sum_margin": r.zero_sum_margin,
            }
        return payload

    # -- endpoints ----------------------------------------------------------

    def create_session(self, body: dict) -> tuple[int, dict]:
        self._sweep()
        n = body.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 13:
            raise ApiError(400, "body must carry an integer n in 1..13")
        if n != self.table.n:
            raise ApiError(503, f"no value table loaded for n={n} (table is n={self.table.n})")
        seed = body.get("seed", time.time_ns() & (2**63 - 1))
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ApiError(400, "seed must be an integer")
        hints = body.get("hints", False)
        if not isinstance(hints, bool):
            raise ApiError(400, "hints must be a boolean")
        session = new_session(n, seed, EquilibriumPolicy(self.table), session_id=uuid.uuid4().hex[:12])
        entry = _Entry(session=session, hints=hints)
        with self._registry_lock:
            self._sessions[session.id] = entry
        return 201, {"session": self._session_json(entry)}

    def get_session(self, session_id: str) -> tuple[int, dict]:
        self._sweep()
        entry = self._entry(session_id)
        with entry.lock:
            return 200, {"session": self._session_json(entry)}

    def bid(self, session_id: str, body: dict) -> tuple[int, dict]:
        self._sweep()
        entry = self._entry(session_id)
        card = body.get("card")
        if not isinstance(card, int) or isinstance(card, bool):
            raise ApiError(400, "body must carry an integer card")
        with entry.lock:
            try:
                record = submit_bid(entry.session, card)
            except SessionFinishedError as exc:
                raise ApiError(409, str(exc)) from exc
            except IllegalBidError as exc:
                raise ApiError(409, str(exc)) from exc
            return 200, {"round_record": self._round_json(record), "session": self._session_json(entry)}

    def advice(self, session_id: str) -> tuple[int, dict]:
        """Equilibrium mixture for the human's current decision. Never mutates
        the session: the bot's bid was committed when the upcard was revealed."""
        self._sweep()
        entry = self._entry(session_id)
        if not entry.hints:
            raise ApiError(403, "session was created without hints")
        with entry.lock:
            s = entry.session
            if s.finished:
                raise ApiError(409, "session is finished")
            state = GameState(s.human_hand, s.bot_hand, s.deck_remaining)
            solution = strategy_for(self.table, state, s.upcard)
            return 200, {
                "probs": [
                    {"card": card, "p": float(p)}
                    for card, p in zip(s.human_hand.cards(), solution.row)
                ],
                "value": float(solution.value),
            }

    def _parse_state(self, params: dict) -> GameState:
        sets = []
        for key in ("v", "y", "p"):
            raw = params.get(key)
            if raw is None:
                raise ApiError(400, f"missing card list {key!r}")
            try:
                values = [int(tok) for tok in raw.split(",") if tok != ""]
                sets.append(CardSet.from_iterable(values))
            except ValueError as exc:
                raise ApiError(400, f"bad card list {key}={raw!r}: {exc}") from exc
        try:
            return GameState(*sets)
        except ValueError as exc:
            raise ApiError(400, str(exc)) from exc

    def value(self, params: dict) -> tuple[int, dict]:
        state = self._parse_state(params)
        if self.table.covers(state):
            return 200, {"value": float(self.table.value_of(state))}
        if state.hand_size <= DIRECT_EVAL_MAX_HAND:
            return 200, {"value": float(direct_value(state))}
        raise ApiError(503, "no table covers this state and it is too large to evaluate directly")

    def strategy(self, params: dict) -> tuple[int, dict]:
        state = self._parse_state(params)
        raw = params.get("upcard")
        if raw is None:
            raise ApiError(400, "missing upcard")
        try:
            upcard = int(raw)
        except ValueError as exc:
            raise ApiError(400, f"bad upcard {raw!r}") from exc
        if upcard not in state.deck:
            raise ApiError(400, f"upcard {upcard} not in deck {list(state.deck.cards())}")
        if self.table.covers(state, for_strategy=True):
            solution = strategy_for(self.table, state, upcard)
        elif state.hand_size <= DIRECT_EVAL_MAX_HAND:
            solution = direct_solution(state, upcard)
        else:
            raise ApiError(503, "no table covers this state and it is too large to evaluate directly")
        return 200, {
            "probs": [
                {"card": card, "p": float(p)} for card, p in zip(state.one.cards(), solution.row)
            ],
            "value": float(solution.value),
        }


_ROUTES = [
    ("POST", re.compile(r"^/api/v1/sessions$"), "create_session", True),
    ("GET", re.compile(r"^/api/v1/sessions/([0-9a-f]+)$"), "get_session", False),
    ("POST", re.compile(r"^/api/v1/sessions/([0-9a-f]+)/bid$"), "bid", True),
    ("GET", re.compile(r"^/api/v1/sessions/([0-9a-f]+)/advice$"), "advice", False),
    ("GET", re.compile(r"^/api/v1/value$"), "value", False),
    ("GET", re.compile(r"^/api/v1/strategy$"), "strategy", False),
]


class _Handler(BaseHTTPRequestHandler):
    server: "GopsHttpServer"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default; tests assert output
        if self.server.verbose:
            super().log_message(fmt, *args)

    def _reply(self, status: int, payload: dict) -> None:
        data = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise ApiError(400, "missing JSON body")
        try:
            body = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ApiError(400, f"malformed JSON body: {exc}") from exc
        if not isinstance(body, dict):
            raise ApiError(400, "JSON body must be an object")
        return body

    def _dispatch(self, method: str) -> None:
        url = urlparse(self.path)
        params = {k: v[-1] for k, v in parse_qs(url.query).items()}
        try:
            for verb, pattern, name, wants_body in _ROUTES:
                match = pattern.match(url.path)
                if match and verb == method:
                    handler = getattr(self.server.api, name)
                    args = list(match.groups())
                    if wants_body:
                        args.append(self._read_body())
                    elif name in ("value", "strategy"):
                        args.append(params)
                    status, payload = handler(*args)
                    self._reply(status, payload)
                    return
                if match and verb != method:
                    raise ApiError(405, f"{method} not allowed here")
            if method == "GET" and self.server.static_dir is not None:
                self._serve_static(url.path)
                return
            raise ApiError(404, f"no route for {url.path}")
        except ApiError as exc:
            self._reply(exc.status, {"error": exc.message})
        except Exception as exc:  # pragma: no cover - last-ditch guard
            self._reply(500, {"error": f"internal error: {exc}"})

    def _serve_static(self, path: str) -> None:
        root = Path(self.server.static_dir).resolve()
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            raise ApiError(404, "not found")
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            raise ApiError(404, f"no route for {path}")
        data = target.read_bytes()
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self) -> None:
        self._dispatch("GET")

    def do_POST(self) -> None:
        self._dispatch("POST")


class GopsHttpServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, api: GopsApi, *, static_dir: str | None = None, verbose: bool = False):
        super().__init__(address, _Handler)
        self.api = api
        self.static_dir = static_dir
        self.verbose = verbose


def make_server(
    table: ValueTable,
    port: int = 0,
    bind: str = "127.0.0.1",
    *,
    static_dir: str | None = None,
    ttl_seconds: float = DEFAULT_TTL_SECONDS,
    verbose: bool = False,
) -> GopsHttpServer:
    """Build (but do not start) the threaded HTTP server; port 0 picks a free one."""
    api = GopsApi(table, ttl_seconds=ttl_seconds)
    return GopsHttpServer((bind, port), api, static_dir=static_dir, verbose=verbose)
