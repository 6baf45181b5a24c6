"""Bob's side: enumeration play, improvement wrappers, history coding.

The enumeration strategy comes in two flavours. The round-indexed one
keeps a private counter, which makes it full-information in spirit even
though it reads only the last pair. The strict coding one is a genuine
function of (last bob, last alice): it recovers the round index by
decoding its own previous move and re-encodes the next index into the
move it returns, so it can be probed hypothetically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DecodeFault, NotEncoded
from .game_engine import BobCodingStrategy, BobFullStrategy
from .numeric_order import (
    POS_INF,
    ExtRat,
    OrderedDomain,
    RationalDomain,
    decode_history,
    encode_history,
    format_rational,
    is_dyadic,
    is_finite,
    parse_rational,
    random_legal,
    rational_witness,
)
from .payoff_sets import PayoffSet

BobHandle = Union[BobFullStrategy, BobCodingStrategy]


# ---------------------------------------------------------------------------
# Enumeration play: during round n, eliminate the n-th member if it is
# still legal, otherwise take the canonical legal pick.
# ---------------------------------------------------------------------------


@dataclass
class EnumerationState:
    payoff: PayoffSet
    round_index: int = 0


def enumeration_move(state: EnumerationState, last_alice: ExtRat, last_bob: ExtRat, domain: OrderedDomain):
    """One move of the round-indexed enumeration strategy; advances the
    state by exactly one round."""
    target = state.payoff.enumerate(state.round_index)
    state.round_index += 1
    if target is not None and last_alice < target < last_bob:
        return target
    fallback = domain.pick_between(last_alice, last_bob)
    if fallback is None:
        raise ValueError(f"no legal element in ({last_alice}, {last_bob})")
    return fallback


class EnumerationBob(BobCodingStrategy):
    """Round-indexed enumeration; one instance per game."""

    pure = False

    def __init__(self, payoff: PayoffSet, domain: OrderedDomain = RationalDomain()):
        if not payoff.can_enumerate:
            payoff.enumerate(0)  # raises CapabilityMissing with context
        self.state = EnumerationState(payoff)
        self.domain = domain

    def move(self, last_bob: ExtRat, last_alice):
        return enumeration_move(self.state, last_alice, last_bob, self.domain)


class EnumerationCodingBob(BobCodingStrategy):
    """Memoryless enumeration: the round index rides inside Bob's own
    move, framed by the codec, so the handle is a pure function of the
    last pair. Replies land strictly below the member they eliminate."""

    pure = True

    def __init__(self, payoff: PayoffSet):
        if not payoff.can_enumerate:
            payoff.enumerate(0)
        self.payoff = payoff

    def _round_from(self, last_bob: ExtRat) -> int:
        if last_bob is POS_INF:
            return 0
        try:
            return int(decode_history(Fraction(last_bob)).decode("ascii"))
        except (NotEncoded, UnicodeDecodeError, ValueError) as exc:
            raise DecodeFault(f"opponent context {last_bob} carries no round frame") from exc

    def move(self, last_bob: ExtRat, last_alice):
        n = self._round_from(last_bob)
        target = self.payoff.enumerate(n)
        a = Fraction(last_alice)
        if target is not None and a < target < last_bob:
            upper = target
        elif is_finite(last_bob):
            upper = min(Fraction(last_bob), a + 1)
        else:
            upper = a + 1
        return encode_history(str(n + 1).encode("ascii"), a, upper)


# ---------------------------------------------------------------------------
# Plain movers.
# ---------------------------------------------------------------------------


class PickBetweenBob(BobCodingStrategy):
    """The canonical chooser as a strategy: midpoint on finite bounds,
    last move plus one when unbounded above."""

    pure = True

    def __init__(self, domain: OrderedDomain = RationalDomain()):
        self.domain = domain

    def move(self, last_bob: ExtRat, last_alice):
        value = self.domain.pick_between(last_alice, last_bob)
        if value is None:
            raise ValueError(f"no legal element in ({last_alice}, {last_bob})")
        return value


class WeightedBob(BobCodingStrategy):
    """Splits the legal interval at a fixed rational weight; the whole
    family leaves every target escapable, which tests lean on."""

    pure = True

    def __init__(self, weight: Fraction):
        weight = Fraction(weight)
        if not 0 < weight < 1:
            raise ValueError("weight must be strictly between 0 and 1")
        self.weight = weight

    def move(self, last_bob: ExtRat, last_alice):
        a = Fraction(last_alice)
        if is_finite(last_bob):
            return a + (Fraction(last_bob) - a) * self.weight
        return a + 2 * self.weight


class RandomBob(BobCodingStrategy):
    """Seeded random legal move, snapped to a small dyadic so transcript
    denominators stay polynomial in the round count."""

    pure = False

    def __init__(self, seed: int, domain: OrderedDomain = RationalDomain()):
        self.seed = seed
        self.domain = domain
        self._rng = random.Random(seed)

    def move(self, last_bob: ExtRat, last_alice):
        return random_legal(self._rng, self.domain, last_alice, last_bob)


class MidpointFullBob(BobFullStrategy):
    """Full-information midpoint lowering; the canonical inner strategy
    for the coding transform."""

    def respond(self, alice_hist, last_alice, own_last):
        a = Fraction(last_alice)
        if is_finite(own_last):
            return (a + Fraction(own_last)) / 2
        return a + 1


class TableFullBob(BobFullStrategy):
    """Seeded combinator: each round splits the legal interval at a
    per-round rational weight drawn from the seed; unbounded rounds step
    a seeded rational above Alice. Pure given (history, seed)."""

    def __init__(self, seed: int, table_size: int = 512):
        super().__init__()
        rng = random.Random(seed)
        self.seed = seed
        self._weights = [Fraction(rng.randrange(1, 64), 64) for _ in range(table_size)]
        self._steps = [Fraction(rng.randrange(1, 64), 16) for _ in range(table_size)]

    def respond(self, alice_hist, last_alice, own_last):
        r = (len(alice_hist) - 1) % len(self._weights)
        a = Fraction(last_alice)
        if is_finite(own_last):
            return a + (Fraction(own_last) - a) * self._weights[r]
        return a + self._steps[r]


# ---------------------------------------------------------------------------
# Improvement wrappers.
# ---------------------------------------------------------------------------


def _shrink(inner_value, last_alice, last_bob: ExtRat, completed_rounds: int, domain: OrderedDomain):
    """min(inner, lastA + 1/(n+1)), re-legalized below the live bound.
    Result is always <= the inner move."""
    cap = Fraction(last_alice) + Fraction(1, completed_rounds + 1)
    value = min(inner_value, cap)
    if value < last_bob:
        return value
    fallback = domain.pick_between(last_alice, last_bob)
    if fallback is None:
        raise ValueError(f"no legal element in ({last_alice}, {last_bob})")
    return fallback


class _ShrinkFull(BobFullStrategy):
    def __init__(self, inner: BobFullStrategy, domain: OrderedDomain):
        super().__init__()
        self.inner = inner
        self.domain = domain

    def respond(self, alice_hist, last_alice, own_last):
        return _shrink(self.inner.move(alice_hist), last_alice, own_last, len(alice_hist) - 1, self.domain)


class _ShrinkCoding(BobCodingStrategy):
    pure = False  # needs a round counter, so not probe-safe

    def __init__(self, inner: BobCodingStrategy, domain: OrderedDomain):
        self.inner = inner
        self.domain = domain
        self._round = 0

    def move(self, last_bob: ExtRat, last_alice):
        inner_value = self.inner.move(last_bob, last_alice)
        value = _shrink(inner_value, last_alice, last_bob, self._round, self.domain)
        self._round += 1
        return value


def shrink_wrap(inner: BobHandle, domain: OrderedDomain = RationalDomain()) -> BobHandle:
    """Improvement: keep each reply within 1/(n+1) of Alice's last move,
    never increasing the inner strategy's choice."""
    if inner.kind == "full":
        return _ShrinkFull(inner, domain)
    return _ShrinkCoding(inner, domain)


class _RationalizeFull(BobFullStrategy):
    def __init__(self, inner: BobFullStrategy):
        super().__init__()
        self.inner = inner

    def respond(self, alice_hist, last_alice, own_last):
        value = self.inner.move(alice_hist)
        if value < own_last and is_dyadic(value):
            return value
        upper = value if value < own_last else Fraction(own_last)
        return rational_witness(Fraction(last_alice), Fraction(upper))


def rationalize_wrap(inner: BobFullStrategy) -> BobFullStrategy:
    """Normalize replies to the dyadic-preference pick, never above the
    inner move; already-canonical dyadics pass through unchanged."""
    return _RationalizeFull(inner)


# ---------------------------------------------------------------------------
# The coding transform: full history, smuggled through the moves.
# ---------------------------------------------------------------------------


def serialize_history(values) -> bytes:
    """Length-prefixed rational texts: ``k|n/d|n/d|...``."""
    texts = [format_rational(v) for v in values]
    return "|".join([str(len(texts))] + texts).encode("ascii")


def parse_history(payload: bytes) -> tuple:
    try:
        parts = payload.decode("ascii").split("|")
        count = int(parts[0])
        if count != len(parts) - 1:
            raise ValueError("length prefix disagrees with item count")
        return tuple(parse_rational(t) for t in parts[1:])
    except (UnicodeDecodeError, ValueError, IndexError) as exc:
        raise DecodeFault(f"payload is not a framed history: {exc}") from exc


class CodedBob(BobCodingStrategy):
    """Coding transform of a full-information strategy.

    Decodes Alice's history from its own previous move, consults the
    inner strategy, and answers with a framed value strictly below both
    the inner reply and the previous move.
    """

    pure = True

    def __init__(self, inner: BobFullStrategy):
        self.inner = inner

    def move(self, last_bob: ExtRat, last_alice):
        if last_bob is POS_INF:
            history: tuple = ()
        else:
            try:
                history = parse_history(decode_history(Fraction(last_bob)))
            except NotEncoded as exc:
                raise DecodeFault(
                    f"opponent context {last_bob} carries no history frame; "
                    "the transform must be used from the first round"
                ) from exc
        extended = history + (Fraction(last_alice),)
        inner_value = self.inner.move(extended)
        upper = inner_value if last_bob is POS_INF else min(inner_value, Fraction(last_bob))
        return encode_history(serialize_history(extended), Fraction(last_alice), upper)


def coding_transform(sigma: BobFullStrategy) -> CodedBob:
    return CodedBob(sigma)


@dataclass(frozen=True)
class CodingFrame:
    """Decoded view of one coded Bob move."""

    alice_history: tuple
    value: Fraction


def read_frame(value) -> CodingFrame:
    return CodingFrame(alice_history=parse_history(decode_history(Fraction(value))), value=Fraction(value))
