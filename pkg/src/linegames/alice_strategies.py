"""Alice's side: witness probes, target tracking, perfect-set play.

The probe machinery realizes the counter-strategy arguments at finite
budget: to keep a target x legal for one more round against a coding
opponent, Alice needs some a in (q, x) whose reply lands above x. We
probe the deterministic dyadic sequence a_k = x - (x - q) / 2^k, which
accumulates at x, because an opponent can only trap x by cutting below
it arbitrarily close to x. A miss within the budget is reported as
"presumed eliminated"; it is evidence, not proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import TargetIllegal, WitnessNotFound
from .game_engine import AliceStrategy, BobCodingStrategy, BobFullStrategy
from .numeric_order import (
    NEG_INF,
    POS_INF,
    ExtRat,
    Interval,
    OrderedDomain,
    RationalDomain,
    is_finite,
    random_legal,
    rational_witness,
)
from .payoff_sets import ROOT_CORE, CantorCore, cantor_refine

DEFAULT_BUDGET = 64

VERDICT_ESCAPES = "escapes"
VERDICT_PRESUMED = "presumedEliminated"


@dataclass(frozen=True)
class WitnessQuery:
    """Probe request: rational floor q, opponent's last move, target, budget."""

    q: Fraction
    beta: ExtRat
    x: Fraction
    budget: int

    def __post_init__(self):
        if not self.q < self.x < self.beta:
            raise TargetIllegal(f"need q < x < beta, got {self.q}, {self.x}, {self.beta}")


@dataclass(frozen=True)
class EProbeResult:
    verdict: str
    witness: Optional[Fraction]
    probes_used: int

    @property
    def escapes(self) -> bool:
        return self.verdict == VERDICT_ESCAPES


def witness_search(sigma: BobCodingStrategy, wq: WitnessQuery) -> tuple[Optional[Fraction], int]:
    """First probe a with x < sigma(beta, a), or (None, budget)."""
    if not sigma.pure:
        raise TargetIllegal("witness probing needs a pure coding strategy")
    gap = wq.x - wq.q
    for k in range(1, wq.budget + 1):
        a = wq.x - gap / (1 << k)
        if wq.x < sigma.move(wq.beta, a):
            return a, k
    return None, wq.budget


def e_probe(sigma: BobCodingStrategy, q, beta: ExtRat, x, budget: int = DEFAULT_BUDGET) -> EProbeResult:
    """Budget-bounded membership probe for the one-round trap set at
    (q, beta): does every Alice choice in (q, x) get x cut off?"""
    witness, used = witness_search(sigma, WitnessQuery(Fraction(q), beta, Fraction(x), budget))
    if witness is None:
        return EProbeResult(VERDICT_PRESUMED, None, used)
    return EProbeResult(VERDICT_ESCAPES, witness, used)


def _floor_rational(last_alice: ExtRat, x: Fraction) -> Fraction:
    if is_finite(last_alice):
        return rational_witness(Fraction(last_alice), x)
    return x - 1


def target_move(sigma: BobCodingStrategy, last_alice: ExtRat, last_bob: ExtRat, x, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Alice's tracking move against a coding opponent: a witness a with
    last_alice < a < x and x still below the reply to a."""
    x = Fraction(x)
    if not last_alice < x < last_bob:
        raise TargetIllegal(f"target {x} outside ({last_alice}, {last_bob})")
    q = _floor_rational(last_alice, x)
    witness, _ = witness_search(sigma, WitnessQuery(q, last_bob, x, budget))
    if witness is None:
        raise WitnessNotFound(budget)
    return witness


def full_info_target_move(sigma: BobFullStrategy, history, x, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Tracking move against a full-information opponent: probe extended
    histories t + (a,) instead of the last pair."""
    x = Fraction(x)
    history = tuple(history)
    last_alice: ExtRat = history[-1] if history else NEG_INF
    beta: ExtRat = sigma.move(history) if history else POS_INF
    if not last_alice < x < beta:
        raise TargetIllegal(f"target {x} outside ({last_alice}, {beta})")
    q = _floor_rational(last_alice, x)
    gap = x - q
    for k in range(1, budget + 1):
        a = x - gap / (1 << k)
        if x < sigma.move(history + (a,)):
            return a
    raise WitnessNotFound(budget)


class TargetAlice(AliceStrategy):
    """Keeps one chosen target legal, round after round, against the
    specific opponent handle it was built for."""

    def __init__(self, x, opponent: Union[BobCodingStrategy, BobFullStrategy], budget: int = DEFAULT_BUDGET):
        self.x = Fraction(x)
        self.opponent = opponent
        self.budget = budget

    def move(self, alice_hist: tuple, bob_hist: tuple):
        if self.opponent.kind == "coding":
            last_alice = alice_hist[-1] if alice_hist else NEG_INF
            last_bob = bob_hist[-1] if bob_hist else POS_INF
            return target_move(self.opponent, last_alice, last_bob, self.x, self.budget)
        return full_info_target_move(self.opponent, alice_hist, self.x, self.budget)


class PickBetweenAlice(AliceStrategy):
    """First move 0, then the canonical pick: the midpoint mover."""

    def __init__(self, domain: OrderedDomain = RationalDomain()):
        self.domain = domain

    def move(self, alice_hist: tuple, bob_hist: tuple):
        lo = alice_hist[-1] if alice_hist else NEG_INF
        hi = bob_hist[-1] if bob_hist else POS_INF
        value = self.domain.pick_between(lo, hi)
        if value is None:
            raise ValueError(f"no legal element in ({lo}, {hi})")
        return value


class RandomAlice(AliceStrategy):
    """Seeded random legal move snapped to a small dyadic."""

    def __init__(self, seed: int, domain: OrderedDomain = RationalDomain()):
        self.seed = seed
        self.domain = domain
        self._rng = random.Random(seed)

    def move(self, alice_hist: tuple, bob_hist: tuple):
        lo = alice_hist[-1] if alice_hist else NEG_INF
        hi = bob_hist[-1] if bob_hist else POS_INF
        return random_legal(self._rng, self.domain, lo, hi)


@dataclass(frozen=True)
class PerfectTrackerState:
    """Where the perfect-set strategy currently lives."""

    core: CantorCore
    rounds_survived: int = 0


def perfect_move(state: PerfectTrackerState, last_alice: ExtRat, last_bob: ExtRat, max_depth: int = 2048):
    """Refine the construction interval into the live bounds and play its
    left endpoint, a middle-thirds point approached from the right by
    other members. Returns (move, new state)."""
    core = cantor_refine(state.core, Interval(last_alice, last_bob), max_depth=max_depth)
    return core.left, PerfectTrackerState(core=core, rounds_survived=state.rounds_survived + 1)


class PerfectCantorAlice(AliceStrategy):
    """Middle-thirds instantiation of perfect-set play; keeps the chain
    of cores so a nested-core certificate can be written afterwards."""

    def __init__(self, max_depth: int = 2048):
        self.state = PerfectTrackerState(core=ROOT_CORE)
        self.chain: list[CantorCore] = []
        self.max_depth = max_depth

    def move(self, alice_hist: tuple, bob_hist: tuple):
        lo = alice_hist[-1] if alice_hist else NEG_INF
        hi = bob_hist[-1] if bob_hist else POS_INF
        value, self.state = perfect_move(self.state, lo, hi, max_depth=self.max_depth)
        self.chain.append(self.state.core)
        return value
