"""Truncated infinite games on ordered sets, played exactly.

Alternating strictly-between play on the rational line (and other linear
orders), both classical verdict styles at finite truncation, strategy
improvement and history-coding transforms for Bob, witness-probing
counter-play and perfect-set play for Alice, nested-interval play with
meager covers, and certificates a third party can check from the move
log alone.
"""

from .numeric_order import (
    NEG_INF,
    POS_INF,
    ExtRat,
    Interval,
    IntegerDomain,
    Rat,
    RationalDomain,
    decode_history,
    domain_by_name,
    encode_history,
    format_rational,
    parse_rational,
    pick_between,
    rational_witness,
)
from .game_engine import (
    PLAYER_A,
    PLAYER_B,
    Position,
    Transcript,
    is_legal,
    play_truncated,
    step,
    survival_status,
    width,
)
from .payoff_sets import cantor_contains, cantor_refine, cantor_set, finite_set, rationals_between

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "POS_INF",
    "ExtRat",
    "Interval",
    "IntegerDomain",
    "Rat",
    "RationalDomain",
    "decode_history",
    "domain_by_name",
    "encode_history",
    "format_rational",
    "parse_rational",
    "pick_between",
    "rational_witness",
    "PLAYER_A",
    "PLAYER_B",
    "Position",
    "Transcript",
    "is_legal",
    "play_truncated",
    "step",
    "survival_status",
    "width",
    "cantor_contains",
    "cantor_refine",
    "cantor_set",
    "finite_set",
    "rationals_between",
    "__version__",
]
