"""Descriptor resolution for runs, sessions and the service roster.

Configs are plain JSON. Capability mismatches (enumeration Bob on a set
without an enumerator, target Alice without her x, perfect-set Alice off
the rational line) are rejected here, at load time, not mid-game.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from . import alice_strategies as alices
from . import bob_strategies as bobs
from .errors import CapabilityMissing, ConfigError
from .numeric_order import OrderedDomain, domain_by_name, parse_rational
from .payoff_sets import PayoffSet, cantor_set, complement_in_interval, finite_set, rationals_between

GAMES = ("baker", "cantor")

ALICE_NAMES = ("midpoint-up", "random", "target", "perfect-cantor")
BOB_NAMES = ("midpoint", "enumeration", "enumeration-coding", "random", "midpoint-full", "coded(midpoint)", "coded(table)")
BOB_WRAPS = ("shrink", "rationalize")


@dataclass
class RunConfig:
    game: str = "baker"
    domain_name: str = "rationals"
    payoff: dict = field(default_factory=lambda: {"kind": "rationals", "lo": "0/1", "hi": "1/1"})
    alice: dict = field(default_factory=lambda: {"alice": "midpoint-up"})
    bob: dict = field(default_factory=lambda: {"bob": "midpoint"})
    rounds: int = 20
    seed: int = 0
    out: Optional[str] = None

    @staticmethod
    def from_dict(obj: dict) -> "RunConfig":
        cfg = RunConfig(
            game=obj.get("game", "baker"),
            domain_name=obj.get("domain", "rationals"),
            payoff=obj.get("payoff", {"kind": "rationals", "lo": "0/1", "hi": "1/1"}),
            alice=obj.get("alice", {"alice": "midpoint-up"}),
            bob=obj.get("bob", {"bob": "midpoint"}),
            rounds=int(obj.get("rounds", 20)),
            seed=int(obj.get("seed", 0)),
            out=obj.get("out"),
        )
        if cfg.game not in GAMES:
            raise ConfigError(f"unknown game {cfg.game!r}")
        if cfg.rounds < 0:
            raise ConfigError("rounds must be >= 0")
        return cfg


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return RunConfig.from_dict(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise ConfigError(f"cannot load config {path}: {exc}") from exc


def build_domain(name: str) -> OrderedDomain:
    try:
        return domain_by_name(name)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc


def build_payoff(desc: dict) -> PayoffSet:
    kind = desc.get("kind")
    try:
        if kind == "finite":
            return finite_set([parse_rational(v) for v in desc["values"]])
        if kind == "rationals":
            return rationals_between(parse_rational(desc["lo"]), parse_rational(desc["hi"]))
        if kind == "cantor":
            return cantor_set()
        if kind == "union":
            from .payoff_sets import union_of

            return union_of([build_payoff(p) for p in desc["parts"]])
        if kind == "complementInInterval":
            return complement_in_interval(
                build_payoff(desc["inner"]), parse_rational(desc["lo"]), parse_rational(desc["hi"])
            )
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad payoff descriptor {desc}: {exc}") from exc
    raise ConfigError(f"unknown payoff kind {kind!r}")


def _build_full_bob(name: str, seed: int):
    if name == "midpoint":
        return bobs.MidpointFullBob()
    if name == "table":
        return bobs.TableFullBob(seed)
    raise ConfigError(f"unknown inner full strategy {name!r}")


def build_bob(desc: dict, domain: OrderedDomain, payoff: PayoffSet, seed: int = 0):
    name = desc.get("bob")
    if not isinstance(name, str):
        raise ConfigError(f"bob descriptor needs a 'bob' name: {desc}")
    seed = int(desc.get("seed", seed))
    coded = re.fullmatch(r"coded\((\w[\w-]*)\)", name)
    try:
        if name == "midpoint":
            handle = bobs.PickBetweenBob(domain)
        elif name == "midpoint-full":
            handle = bobs.MidpointFullBob()
        elif name == "enumeration":
            handle = bobs.EnumerationBob(payoff, domain)
        elif name == "enumeration-coding":
            handle = bobs.EnumerationCodingBob(payoff)
        elif name == "random":
            handle = bobs.RandomBob(seed, domain)
        elif coded:
            handle = bobs.coding_transform(_build_full_bob(coded.group(1), seed))
        else:
            raise ConfigError(f"unknown bob strategy {name!r}")
    except CapabilityMissing as exc:
        raise ConfigError(str(exc)) from exc
    for wrap in desc.get("wrap", []):
        if wrap == "shrink":
            handle = bobs.shrink_wrap(handle, domain)
        elif wrap == "rationalize":
            if handle.kind != "full":
                raise ConfigError("rationalize wraps full-information strategies only")
            handle = bobs.rationalize_wrap(handle)
        else:
            raise ConfigError(f"unknown wrap {wrap!r}")
    return handle


def build_alice(desc: dict, domain: OrderedDomain, payoff: PayoffSet, bob, seed: int = 0):
    name = desc.get("alice")
    if not isinstance(name, str):
        raise ConfigError(f"alice descriptor needs an 'alice' name: {desc}")
    if name == "midpoint-up":
        return alices.PickBetweenAlice(domain)
    if name == "random":
        return alices.RandomAlice(int(desc.get("seed", seed)), domain)
    if name == "perfect-cantor":
        if not domain.dense:
            raise ConfigError("perfect-cantor needs the rational line")
        return alices.PerfectCantorAlice()
    if name == "target":
        if "x" not in desc:
            raise ConfigError("target alice needs 'x'")
        try:
            x = parse_rational(desc["x"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        budget = int(desc.get("budget", alices.DEFAULT_BUDGET))
        if bob is None:
            raise ConfigError("target alice counters a machine bob; none configured")
        if bob.kind == "coding" and not bob.pure:
            raise ConfigError("target alice cannot probe a stateful coding bob")
        return alices.TargetAlice(x, bob, budget)
    raise ConfigError(f"unknown alice strategy {name!r}")


def strategy_roster() -> dict:
    return {"alice": list(ALICE_NAMES), "bob": list(BOB_NAMES), "wraps": list(BOB_WRAPS)}
