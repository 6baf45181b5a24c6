"""Referee for truncated play on an ordered domain.

One round is one Alice move followed by one Bob move; a number is legal
when it lies strictly between the latest moves of both players. Plays
are cut at a finite round limit and reported as transcripts whose move
log alone supports certificate checking. If at any point the mover's
open interval holds no domain element, the play stops with the
immediate-loss verdict for Alice, which on dense orders never happens.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .certificates import SurvivalCertificate
from .errors import IllegalMove, LineGamesError, NoRounds, OutOfTurn, StrategyFault
from .numeric_order import (
    NEG_INF,
    POS_INF,
    ExtRat,
    Interval,
    OrderedDomain,
    domain_by_name,
    format_ext,
    is_finite,
    parse_ext,
)

PLAYER_A = "A"
PLAYER_B = "B"

STATUS_COMPLETED = "completed"
STATUS_ALICE_LOSES = "aliceLosesImmediately"


@dataclass(frozen=True)
class Move:
    round_index: int
    player: str
    value: object


@dataclass(frozen=True)
class Position:
    """Histories so far: Alice's strictly increasing, Bob's strictly
    decreasing, every Alice value below every Bob value."""

    domain: OrderedDomain
    alice: tuple = ()
    bob: tuple = ()

    @property
    def round_index(self) -> int:
        return len(self.bob)

    @property
    def to_move(self) -> str:
        return PLAYER_A if len(self.alice) == len(self.bob) else PLAYER_B

    def last_alice(self) -> ExtRat:
        return self.alice[-1] if self.alice else NEG_INF

    def last_bob(self) -> ExtRat:
        return self.bob[-1] if self.bob else POS_INF

    def legal_interval(self) -> Interval:
        return Interval(self.last_alice(), self.last_bob())


def is_legal(pos: Position, x, player: str) -> bool:
    """Strict betweenness for the given player at this position. Both
    players face the same open interval: Alice against the last pair,
    Bob against Alice's pending move and his own last move."""
    del player  # the bounds expression is the same for both seats
    return pos.domain.contains(x) and pos.legal_interval().contains(x)


def step(pos: Position, x, player: str) -> Position:
    if player != pos.to_move:
        raise OutOfTurn(f"{player} moved, {pos.to_move} is on the move")
    if not is_legal(pos, x, player):
        iv = pos.legal_interval()
        raise IllegalMove(player, x, iv.lo, iv.hi)
    if player == PLAYER_A:
        return Position(pos.domain, pos.alice + (x,), pos.bob)
    return Position(pos.domain, pos.alice, pos.bob + (x,))


class AliceStrategy:
    """Full-information handle: sees both histories, owns private state."""

    kind = "alice"

    def move(self, alice_hist: tuple, bob_hist: tuple):
        raise NotImplementedError


class BobStrategy:
    kind = "bob"


class BobFullStrategy(BobStrategy):
    """History-reading Bob. ``move`` takes Alice's full history; the
    handle recovers its own prior reply by memoized self-application, so
    a full strategy is a pure function of Alice's moves."""

    kind = "full"
    pure = True

    def __init__(self):
        self._memo: dict[tuple, object] = {}

    def move(self, alice_hist: tuple):
        key = tuple(alice_hist)
        if not key:
            raise ValueError("Bob only moves after Alice")
        cached = self._memo.get(key)
        if cached is None:
            cached = self.respond(key, key[-1], self.own_last(key[:-1]))
            self._memo[key] = cached
        return cached

    def own_last(self, prefix: tuple) -> ExtRat:
        return POS_INF if not prefix else self.move(prefix)

    def respond(self, alice_hist: tuple, last_alice, own_last: ExtRat):
        raise NotImplementedError


class BobCodingStrategy(BobStrategy):
    """Bob from the last pair only: move(last_bob, last_alice).

    ``pure`` marks handles that are genuine functions of the pair and are
    therefore safe to probe hypothetically; wrappers that keep a round
    counter set it to False.
    """

    kind = "coding"
    pure = True

    def move(self, last_bob: ExtRat, last_alice):
        raise NotImplementedError


@dataclass
class Transcript:
    """Finite record of a play prefix. Replaying the move log from the
    empty position must reproduce the same final bounds."""

    domain_name: str
    game: str
    seed: int
    limit: int
    moves: list
    status: str = STATUS_COMPLETED
    stuck_round: Optional[int] = None
    stuck_player: Optional[str] = None
    meta: dict = field(default_factory=dict)

    def domain(self) -> OrderedDomain:
        return domain_by_name(self.domain_name)

    def _columns(self) -> tuple:
        # cached per move count; transcripts are append-once records
        cached = getattr(self, "_cols", None)
        if cached is None or cached[0] != len(self.moves):
            alice = [m.value for m in self.moves if m.player == PLAYER_A]
            bob = [m.value for m in self.moves if m.player == PLAYER_B]
            cached = (len(self.moves), alice, bob)
            object.__setattr__(self, "_cols", cached)
        return cached

    def alice_values(self) -> list:
        return list(self._columns()[1])

    def bob_values(self) -> list:
        return list(self._columns()[2])

    def rounds(self) -> int:
        return len(self._columns()[2])

    def round_bounds(self, n: int) -> tuple:
        """(a_n, b_n) after round n completed."""
        _, alice, bob = self._columns()
        if n < 0 or n >= len(bob):
            raise NoRounds(f"round {n} is not completed in this transcript")
        return alice[n], bob[n]

    def final_position(self) -> Position:
        pos = Position(self.domain())
        for m in self.moves:
            pos = step(pos, m.value, m.player)
        return pos

    def header(self) -> dict:
        head = {
            "domain": self.domain_name,
            "game": self.game,
            "seed": self.seed,
            "N": self.limit,
            "status": self.status,
        }
        if self.stuck_round is not None:
            head["stuckRound"] = self.stuck_round
            head["stuckPlayer"] = self.stuck_player
        if self.meta:
            head["meta"] = self.meta
        return head

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.header(), sort_keys=True, separators=(",", ":"))]
        for m in self.moves:
            lines.append(
                json.dumps(
                    {"round": m.round_index, "player": m.player, "value": format_ext(m.value)},
                    sort_keys=True,
                    separators=(",", ":"),
                )
            )
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_jsonl(text: str) -> "Transcript":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty transcript")
        head = json.loads(lines[0])
        domain = domain_by_name(head["domain"])
        moves = []
        for ln in lines[1:]:
            obj = json.loads(ln)
            moves.append(Move(int(obj["round"]), obj["player"], domain.coerce(parse_ext(obj["value"]))))
        tr = Transcript(
            domain_name=head["domain"],
            game=head["game"],
            seed=int(head["seed"]),
            limit=int(head["N"]),
            moves=moves,
            status=head.get("status", STATUS_COMPLETED),
            stuck_round=head.get("stuckRound"),
            stuck_player=head.get("stuckPlayer"),
            meta=head.get("meta", {}),
        )
        tr.final_position()  # replay check: every move legal at its time
        return tr


def _invoke_bob(bob, alice_hist: tuple, last_bob: ExtRat):
    if bob.kind == "full":
        return bob.move(tuple(alice_hist))
    return bob.move(last_bob, alice_hist[-1])


def play_truncated(
    alice: AliceStrategy,
    bob,
    limit: int,
    domain: OrderedDomain,
    seed: int = 0,
    game: str = "baker",
    meta: Optional[dict] = None,
) -> Transcript:
    """Referee ``limit`` rounds, or fewer if the domain runs dry.

    A strategy emitting an illegal value aborts with attribution rather
    than being clamped, so tests can tell strategy bugs from referee bugs.
    """
    if limit < 0:
        raise ValueError("round limit must be >= 0")
    pos = Position(domain)
    moves: list[Move] = []
    status, stuck_round, stuck_player = STATUS_COMPLETED, None, None
    for r in range(limit):
        stuck = False
        for player in (PLAYER_A, PLAYER_B):
            iv = pos.legal_interval()
            if domain.pick_between(iv.lo, iv.hi) is None:
                status, stuck_round, stuck_player = STATUS_ALICE_LOSES, r, player
                stuck = True
                break
            try:
                if player == PLAYER_A:
                    value = alice.move(pos.alice, pos.bob)
                else:
                    value = _invoke_bob(bob, pos.alice, pos.last_bob())
                pos = step(pos, value, player)
            except (IllegalMove, OutOfTurn) as exc:
                raise StrategyFault(player, r, str(exc)) from exc
            except StrategyFault:
                raise
            except LineGamesError as exc:
                raise StrategyFault(player, r, str(exc)) from exc
            moves.append(Move(r, player, value))
        if stuck:
            break
    return Transcript(
        domain_name=domain.name,
        game=game,
        seed=seed,
        limit=limit,
        moves=moves,
        status=status,
        stuck_round=stuck_round,
        stuck_player=stuck_player,
        meta=dict(meta or {}),
    )


def width(tr: Transcript) -> ExtRat:
    """b - a after the last completed round."""
    if tr.rounds() == 0:
        raise NoRounds("width needs at least one completed round")
    a, b = tr.round_bounds(tr.rounds() - 1)
    if not (is_finite(a) and is_finite(b)):
        return POS_INF
    return Fraction(b) - Fraction(a)


@dataclass(frozen=True)
class SurvivalReport:
    """Per-round legality of a tracked value, with either the first
    elimination round or a survival certificate through truncation."""

    legal: tuple
    eliminated_at: Optional[int]
    certificate: Optional[SurvivalCertificate]


def survival_status(tr: Transcript, x) -> SurvivalReport:
    legal = []
    eliminated_at = None
    for n in range(tr.rounds()):
        a, b = tr.round_bounds(n)
        ok = a < x < b
        legal.append(ok)
        if not ok and eliminated_at is None:
            eliminated_at = n
    cert = None
    if eliminated_at is None and tr.rounds() > 0:
        bounds = tuple(tr.round_bounds(n) for n in range(tr.rounds()))
        cert = SurvivalCertificate(x=Fraction(x), bounds=bounds, rounds=tr.rounds())
    return SurvivalReport(legal=tuple(legal), eliminated_at=eliminated_at, certificate=cert)
