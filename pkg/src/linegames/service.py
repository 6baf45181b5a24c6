"""Game sessions and the HTTP/JSON service hosting them.

One in-memory session per created game; the human occupies one seat and
a configured machine strategy the other. The same GameSession drives the
terminal mode and the HTTP endpoints:

    POST /games {config}                -> {id, state}
    GET  /games/{id}                    -> state
    POST /games/{id}/moves {"value": "num/den"} -> state, or 409 with the legal interval
    GET  /strategies                    -> roster

All rationals travel as "num/den" texts.
"""

from __future__ import annotations

import json
import re
import threading
import time
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from .config import RunConfig, build_alice, build_bob, build_domain, build_payoff, strategy_roster
from .errors import ConfigError, LineGamesError
from .game_engine import PLAYER_A, PLAYER_B, Position, is_legal, step
from .numeric_order import format_ext, parse_rational

STATUS_ONGOING = "ongoing"
STATUS_ALICE_STUCK = "aliceStuck"
STATUS_FAULT = "fault"
STATUS_DONE = "done"


class IllegalHumanMove(LineGamesError):
    def __init__(self, lo, hi):
        super().__init__(f"move must lie strictly inside ({lo}, {hi})")
        self.lo = lo
        self.hi = hi


class GameSession:
    """Serialized move application over one refereed position."""

    def __init__(self, config: dict):
        cfg = RunConfig.from_dict(config)
        self.human_seat = config.get("humanSeat", PLAYER_A)
        if self.human_seat not in (PLAYER_A, PLAYER_B):
            raise ConfigError(f"humanSeat must be 'A' or 'B', got {self.human_seat!r}")
        self.config = cfg
        self.domain = build_domain(cfg.domain_name)
        self.payoff = build_payoff(cfg.payoff)
        if self.human_seat == PLAYER_A:
            self.machine = build_bob(cfg.bob, self.domain, self.payoff, cfg.seed)
        else:
            machine_bob = None
            if cfg.alice.get("alice") == "target":
                machine_bob = build_bob(cfg.bob, self.domain, self.payoff, cfg.seed)
            self.machine = build_alice(cfg.alice, self.domain, self.payoff, machine_bob, cfg.seed)
        self.id = uuid.uuid4().hex[:12]
        self.position = Position(self.domain)
        self.status = STATUS_ONGOING
        self.fault_reason = ""
        self.moves: list = []
        self.lock = threading.Lock()
        self.last_access = time.monotonic()
        self._advance_machine()

    # -- state transitions ---------------------------------------------------

    def _machine_value(self):
        if self.machine.kind in ("full", "coding"):
            if self.machine.kind == "full":
                return self.machine.move(self.position.alice)
            return self.machine.move(self.position.last_bob(), self.position.alice[-1])
        return self.machine.move(self.position.alice, self.position.bob)

    def _round_limit_reached(self) -> bool:
        return self.position.round_index >= self.config.rounds

    def _check_stuck(self) -> bool:
        iv = self.position.legal_interval()
        if self.domain.pick_between(iv.lo, iv.hi) is None:
            self.status = STATUS_ALICE_STUCK
            return True
        return False

    def _advance_machine(self) -> None:
        """Let the machine move until it is the human's turn or the game ends."""
        while self.status == STATUS_ONGOING and not self._round_limit_reached():
            if self.position.to_move == self.human_seat:
                return
            if self._check_stuck():
                return
            mover = self.position.to_move
            try:
                value = self._machine_value()
                self.position = step(self.position, value, mover)
                self.moves.append((mover, value))
            except LineGamesError as exc:
                self.status = STATUS_FAULT
                self.fault_reason = str(exc)
                return
        if self.status == STATUS_ONGOING and self._round_limit_reached():
            self.status = STATUS_DONE

    def submit(self, value_text: str) -> None:
        """Apply one human move; raises IllegalHumanMove with the live
        interval when the referee rejects it."""
        try:
            value = self.domain.coerce(parse_rational(value_text))
        except ValueError as exc:
            raise ConfigError(f"cannot parse move {value_text!r}: {exc}") from exc
        if self.status != STATUS_ONGOING:
            raise ConfigError(f"game is {self.status}")
        if self.position.to_move != self.human_seat:
            raise ConfigError("not your turn")
        if self._check_stuck():
            return
        iv = self.position.legal_interval()
        if not is_legal(self.position, value, self.human_seat):
            raise IllegalHumanMove(format_ext(iv.lo), format_ext(iv.hi))
        self.position = step(self.position, value, self.human_seat)
        self.moves.append((self.human_seat, value))
        self._advance_machine()

    def view(self) -> dict:
        iv = self.position.legal_interval()
        history = [
            {"round": i // 2, "player": player, "value": format_ext(value)}
            for i, (player, value) in enumerate(self.moves)
        ]
        return {
            "id": self.id,
            "game": self.config.game,
            "domain": self.domain.name,
            "humanSeat": self.human_seat,
            "bounds": {"lo": format_ext(iv.lo), "hi": format_ext(iv.hi)},
            "history": history,
            "toMove": self.position.to_move,
            "round": self.position.round_index,
            "rounds": self.config.rounds,
            "status": self.status,
            "fault": self.fault_reason,
        }


class SessionStore:
    def __init__(self, ttl_seconds: float = 3600.0):
        self.ttl = ttl_seconds
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    def create(self, config: dict) -> GameSession:
        session = GameSession(config)
        with self._lock:
            self._purge()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Optional[GameSession]:
        with self._lock:
            self._purge()
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = time.monotonic()
            return session

    def _purge(self) -> None:
        now = time.monotonic()
        dead = [sid for sid, s in self._sessions.items() if now - s.last_access > self.ttl]
        for sid in dead:
            del self._sessions[sid]


def make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        server_version = "linegames/0.1"

        def log_message(self, *args):  # keep test output quiet
            pass

        def _send(self, code: int, body: dict) -> None:
            data = json.dumps(body).encode("utf-8")
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(data)

        def _read_json(self) -> Optional[dict]:
            try:
                length = int(self.headers.get("Content-Length", "0"))
                return json.loads(self.rfile.read(length) or b"{}")
            except (ValueError, json.JSONDecodeError):
                return None

        def do_GET(self):
            if self.path == "/strategies":
                self._send(200, strategy_roster())
                return
            match = re.fullmatch(r"/games/([0-9a-f]+)", self.path)
            if match:
                session = store.get(match.group(1))
                if session is None:
                    self._send(404, {"error": "NotFound"})
                    return
                with session.lock:
                    self._send(200, session.view())
                return
            self._send(404, {"error": "NotFound"})

        def do_POST(self):
            if self.path == "/games":
                body = self._read_json()
                if body is None:
                    self._send(400, {"error": "BadRequest", "detail": "invalid JSON"})
                    return
                try:
                    session = store.create(body)
                except (ConfigError, LineGamesError) as exc:
                    self._send(400, {"error": "BadConfig", "detail": str(exc)})
                    return
                with session.lock:
                    self._send(201, {"id": session.id, "state": session.view()})
                return
            match = re.fullmatch(r"/games/([0-9a-f]+)/moves", self.path)
            if match:
                session = store.get(match.group(1))
                if session is None:
                    self._send(404, {"error": "NotFound"})
                    return
                body = self._read_json()
                if body is None or "value" not in body:
                    self._send(400, {"error": "BadRequest", "detail": "need {'value': 'num/den'}"})
                    return
                with session.lock:
                    try:
                        session.submit(str(body["value"]))
                    except IllegalHumanMove as exc:
                        self._send(
                            409,
                            {
                                "error": "IllegalMove",
                                "legalInterval": {"lo": exc.lo, "hi": exc.hi},
                                "state": session.view(),
                            },
                        )
                        return
                    except ConfigError as exc:
                        self._send(400, {"error": "BadRequest", "detail": str(exc)})
                        return
                    self._send(200, session.view())
                return
            self._send(404, {"error": "NotFound"})

    return Handler


def serve(port: int, ttl_seconds: float = 3600.0) -> ThreadingHTTPServer:
    """Bind and return the server; caller decides whether to block."""
    store = SessionStore(ttl_seconds)
    server = ThreadingHTTPServer(("127.0.0.1", port), make_handler(store))
    return server


def serve_forever(port: int, ttl_seconds: float = 3600.0) -> None:
    server = serve(port, ttl_seconds)
    print(f"linegames service listening on {server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
