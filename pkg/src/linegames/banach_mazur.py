"""Nested-interval play on rational-endpoint open subintervals.

Bob moves first; the players alternate choosing open subintervals of the
last interval. Every move must satisfy closure containment (the closure
of the new interval inside the old one), the classical device that keeps
the intersection nonempty at the limit and makes truncated claims
meaningful. Dodging strategies consume one nowhere-dense piece of a
cover per round, so after round n the live interval misses every piece
seen so far.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .alice_strategies import PerfectCantorAlice
from .certificates import (
    BMDisjointCertificate,
    NestedCoreCertificate,
    validate_bm_disjoint,
    validate_nested_core,
)
from .errors import IllegalInterval, LineGamesError
from .game_engine import PLAYER_A, PLAYER_B, play_truncated
from .numeric_order import Interval, RationalDomain, format_rational, parse_rational
from .payoff_sets import CantorDust, NowhereDenseSet, PayoffSet, avoid, cantor_set, rationals_between

from . import bob_strategies as bobs


@dataclass(frozen=True)
class BMMove:
    round_index: int
    player: str
    interval: Interval


@dataclass
class BMTranscript:
    start: Interval
    limit: int
    moves: list = field(default_factory=list)

    def intervals(self) -> list:
        return [m.interval for m in self.moves]

    def final_interval(self) -> Interval:
        return self.moves[-1].interval if self.moves else self.start

    def interval_after_round(self, n: int) -> Interval:
        """The interval after round n, i.e. after Alice's n-th reply."""
        alice_moves = [m for m in self.moves if m.player == PLAYER_A]
        return alice_moves[n].interval

    def rounds(self) -> int:
        return len([m for m in self.moves if m.player == PLAYER_A])

    def to_jsonl(self) -> str:
        head = {
            "game": "banach-mazur",
            "start": [format_rational(self.start.lo), format_rational(self.start.hi)],
            "N": self.limit,
        }
        lines = [json.dumps(head, sort_keys=True, separators=(",", ":"))]
        for m in self.moves:
            lines.append(
                json.dumps(
                    {
                        "round": m.round_index,
                        "player": m.player,
                        "lo": format_rational(m.interval.lo),
                        "hi": format_rational(m.interval.hi),
                    },
                    sort_keys=True,
                    separators=(",", ":"),
                )
            )
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_jsonl(text: str) -> "BMTranscript":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = json.loads(lines[0])
        start = Interval(parse_rational(head["start"][0]), parse_rational(head["start"][1]))
        tr = BMTranscript(start=start, limit=int(head["N"]))
        current = start
        for ln in lines[1:]:
            obj = json.loads(ln)
            nxt = Interval(parse_rational(obj["lo"]), parse_rational(obj["hi"]))
            if not _closure_inside(nxt, current):
                raise ValueError(f"logged interval {nxt} breaks closure containment in {current}")
            tr.moves.append(BMMove(int(obj["round"]), obj["player"], nxt))
            current = nxt
        return tr


def _closure_inside(inner: Interval, outer: Interval) -> bool:
    return outer.lo < inner.lo < inner.hi < outer.hi


def closure_shrink(interval: Interval) -> Interval:
    """Middle half: the canonical closure-contained subinterval."""
    lo, hi = Fraction(interval.lo), Fraction(interval.hi)
    w = hi - lo
    return Interval(lo + w / 4, hi - w / 4)


class BMStrategy:
    """One nested-interval player: round index and live interval in,
    wished subinterval out. The referee enforces closure containment."""

    def choose(self, round_index: int, current: Interval) -> Interval:
        raise NotImplementedError


class HalvingStrategy(BMStrategy):
    """Keeps the left half, closure-shrunk."""

    def choose(self, round_index: int, current: Interval) -> Interval:
        lo, hi = Fraction(current.lo), Fraction(current.hi)
        return closure_shrink(Interval(lo, (lo + hi) / 2))


class MeagerPresentation:
    """A cover by nowhere-dense pieces, one handed out per round; None
    past the end of a finite cover."""

    def __init__(self, pieces: Optional[Sequence[NowhereDenseSet]] = None, payoff: Optional[PayoffSet] = None):
        if (pieces is None) == (payoff is None):
            raise ValueError("give either explicit pieces or a covered payoff set")
        self._pieces = list(pieces) if pieces is not None else None
        self._payoff = payoff

    def piece(self, n: int) -> Optional[NowhereDenseSet]:
        if self._pieces is not None:
            return self._pieces[n] if n < len(self._pieces) else None
        return self._payoff.nd_piece(n)


def meager_bob_move(presentation: MeagerPresentation, n: int, interval: Interval) -> Interval:
    """Dodge the cover's n-th piece, then shrink to closure containment.
    Pieces already dodged stay dodged because later intervals nest."""
    if interval.is_empty():
        raise ValueError("empty interval")
    piece = presentation.piece(n)
    dodged = avoid(piece, interval) if piece is not None else interval
    return closure_shrink(dodged)


def comeager_alice_move(complement_presentation: MeagerPresentation, n: int, interval: Interval) -> Interval:
    """Alice's mirror move: dodge the n-th piece of the complement's cover."""
    return meager_bob_move(complement_presentation, n, interval)


class MeagerDodger(BMStrategy):
    def __init__(self, presentation: MeagerPresentation):
        self.presentation = presentation

    def choose(self, round_index: int, current: Interval) -> Interval:
        return meager_bob_move(self.presentation, round_index, current)


def bm_play_truncated(alice: BMStrategy, bob: BMStrategy, limit: int, start: Interval) -> BMTranscript:
    """Referee ``limit`` rounds of Bob-then-Alice subinterval choices."""
    if start.is_empty():
        raise ValueError("start interval is empty")
    tr = BMTranscript(start=start, limit=limit)
    current = start
    for r in range(limit):
        for player, strategy in ((PLAYER_B, bob), (PLAYER_A, alice)):
            chosen = strategy.choose(r, current)
            if chosen.is_empty() or not _closure_inside(chosen, current):
                raise IllegalInterval(player, r, f"{chosen} not closure-contained in {current}")
            tr.moves.append(BMMove(r, player, chosen))
            current = chosen
    return tr


def _default_baker_roster(seeds: Sequence[int] = (7,)) -> list:
    roster = [
        ("midpoint", lambda: bobs.PickBetweenBob()),
        ("enumeration-on-rationals", lambda: bobs.EnumerationBob(rationals_between(0, 1))),
        ("enumeration-on-rationals+shrink", lambda: bobs.shrink_wrap(bobs.EnumerationBob(rationals_between(0, 1)))),
        ("midpoint+shrink", lambda: bobs.shrink_wrap(bobs.PickBetweenBob())),
    ]
    for s in seeds:
        roster.append((f"random({s})", lambda s=s: bobs.RandomBob(s)))
    return roster


def compare_on_cantor(limit: int, roster: Optional[Sequence] = None) -> dict:
    """Play both games against the middle-thirds payoff and emit one
    document with both finite-round outcomes: the dodger empties the
    nested interval of middle-thirds points, while perfect-set play keeps
    an entire construction interval of them legal."""
    if limit < 1:
        raise ValueError("need at least one round")
    start = Interval(Fraction(0), Fraction(1))
    dust = CantorDust()
    gap, gap_depth = dust.avoid_gap(start)

    bm_tr = bm_play_truncated(HalvingStrategy(), MeagerDodger(MeagerPresentation([dust])), limit, start)
    final = bm_tr.final_interval()
    bm_cert = BMDisjointCertificate(
        final_lo=Fraction(final.lo),
        final_hi=Fraction(final.hi),
        gap_lo=Fraction(gap.lo),
        gap_hi=Fraction(gap.hi),
        gap_depth=gap_depth,
    )
    bm_ok, bm_reason = validate_bm_disjoint(bm_cert, bm_tr)

    baker_runs = []
    for name, make in roster or _default_baker_roster():
        alice = PerfectCantorAlice()
        tr = play_truncated(alice, make(), limit, RationalDomain(), game="baker", meta={"bob": name})
        cert = build_nested_core_certificate(alice, tr)
        ok, reason = validate_nested_core(cert, tr)
        baker_runs.append({"bob": name, "certificate": cert, "valid": ok, "reason": reason})

    return {
        "banachMazur": {"transcript": bm_tr, "certificate": bm_cert, "valid": bm_ok, "reason": bm_reason},
        "baker": baker_runs,
        "mutuallyValid": bm_ok and all(r["valid"] for r in baker_runs),
    }


def build_nested_core_certificate(alice: PerfectCantorAlice, tr) -> NestedCoreCertificate:
    """Package the strategy's core chain as a checkable certificate."""
    if not alice.chain or tr.rounds() == 0:
        raise LineGamesError("no completed rounds to certify")
    entries = tuple((n, core.left, core.depth) for n, core in enumerate(alice.chain))
    last = alice.chain[-1]
    _, b_last = tr.round_bounds(tr.rounds() - 1)
    margin = last.depth
    while not last.left + Fraction(1, 3**margin) < b_last:
        margin += 1
    return NestedCoreCertificate(entries=entries, final_margin=margin)
