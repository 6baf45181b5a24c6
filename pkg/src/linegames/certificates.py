"""Finite-round evidence objects, checkable from a move log alone.

No validator here ever consults a strategy: the inputs are the
certificate and a transcript (duck-typed: rounds(), round_bounds(n),
alice_values(), bob_values()). That is what makes third-party
verification meaningful.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .numeric_order import format_rational, parse_rational
from .payoff_sets import is_left_endpoint


@dataclass(frozen=True)
class SurvivalCertificate:
    """A tracked target stayed strictly inside every logged round's bounds."""

    x: Fraction
    bounds: tuple
    rounds: int


@dataclass(frozen=True)
class EliminationCertificate:
    """The enumerated value with this index is out of bounds for every
    logged round from the index on. ``enumeration`` names the order the
    index refers to; it is provenance, not part of the checked claim."""

    value: Fraction
    index: int
    enumeration: str = ""


@dataclass(frozen=True)
class BracketCertificate:
    """Final bounds bracketing the would-be limit at truncation."""

    lo: Fraction
    hi: Fraction
    round_index: int


@dataclass(frozen=True)
class NestedCoreCertificate:
    """A strictly nesting chain of construction intervals, one per Alice
    move, whose last member still has room below the final upper bound.
    Witnesses that uncountably many middle-thirds points stay legal."""

    entries: tuple  # ((round, left, depth), ...)
    final_margin: int


@dataclass(frozen=True)
class BMDisjointCertificate:
    """The final nested interval sits inside a removed middle third."""

    final_lo: Fraction
    final_hi: Fraction
    gap_lo: Fraction
    gap_hi: Fraction
    gap_depth: int


def validate_survival(cert: SurvivalCertificate, tr) -> tuple[bool, str]:
    if cert.rounds != len(cert.bounds):
        return False, "round count disagrees with bounds list"
    if cert.rounds > tr.rounds():
        return False, "certificate covers more rounds than the log"
    for n, (a, b) in enumerate(cert.bounds):
        la, lb = tr.round_bounds(n)
        if (a, b) != (la, lb):
            return False, f"bounds mismatch at round {n}"
        if not a < cert.x < b:
            return False, f"target not strictly inside bounds at round {n}"
    return True, "ok"


def validate_elimination(cert: EliminationCertificate, tr) -> tuple[bool, str]:
    if cert.index < 0:
        return False, "negative index"
    checked = False
    for m in range(cert.index, tr.rounds()):
        a, b = tr.round_bounds(m)
        checked = True
        if a < cert.value < b:
            return False, f"value still legal at round {m}"
    if not checked:
        return False, "no logged round at or after the elimination index"
    return True, "ok"


def validate_bracket(cert: BracketCertificate, tr) -> tuple[bool, str]:
    if tr.rounds() == 0:
        return False, "no completed rounds"
    if cert.round_index != tr.rounds() - 1:
        return False, "bracket round is not the final round"
    a, b = tr.round_bounds(cert.round_index)
    if (cert.lo, cert.hi) != (a, b):
        return False, "bracket disagrees with final bounds"
    if not cert.lo < cert.hi:
        return False, "degenerate bracket"
    return True, "ok"


def validate_nested_core(cert: NestedCoreCertificate, tr) -> tuple[bool, str]:
    alice = tr.alice_values()
    if len(cert.entries) != len(alice) or not cert.entries:
        return False, "one chain entry per Alice move required"
    prev_left = prev_right = prev_depth = None
    for i, (round_index, left, depth) in enumerate(cert.entries):
        if round_index != i:
            return False, f"entry {i} labels round {round_index}"
        width = Fraction(1, 3**depth)
        if not is_left_endpoint(left, depth):
            return False, f"entry {i} is not a construction endpoint"
        if alice[i] != left:
            return False, f"Alice's move at round {i} is not the chain endpoint"
        if i > 0:
            if depth <= prev_depth:
                return False, f"chain does not deepen at round {i}"
            if not (prev_left <= left and left + width <= prev_right):
                return False, f"chain does not nest at round {i}"
            a_prev, b_prev = tr.round_bounds(i - 1)
            if not (a_prev < left and left + width < b_prev):
                return False, f"core at round {i} not strictly inside prior bounds"
        prev_left, prev_right, prev_depth = left, left + width, depth
    if tr.rounds() == 0:
        return False, "no completed rounds"
    _, b_last = tr.round_bounds(tr.rounds() - 1)
    if cert.final_margin < prev_depth:
        return False, "final margin shallower than the chain"
    if not prev_left + Fraction(1, 3**cert.final_margin) < b_last:
        return False, "no sub-core fits below the final upper bound"
    return True, "ok"


def _is_removed_gap(gap_lo: Fraction, gap_hi: Fraction, depth: int) -> bool:
    if depth < 1:
        return False
    width = Fraction(1, 3**depth)
    if gap_hi - gap_lo != width:
        return False
    left = gap_lo - width
    return is_left_endpoint(left, depth - 1)


def validate_bm_disjoint(cert: BMDisjointCertificate, bm_tr) -> tuple[bool, str]:
    final = bm_tr.final_interval()
    if (cert.final_lo, cert.final_hi) != (final.lo, final.hi):
        return False, "final interval disagrees with the log"
    if not (cert.gap_lo <= cert.final_lo and cert.final_hi <= cert.gap_hi):
        return False, "final interval not inside the claimed gap"
    if not _is_removed_gap(cert.gap_lo, cert.gap_hi, cert.gap_depth):
        return False, "claimed gap is not a removed middle third"
    return True, "ok"


# ---------------------------------------------------------------------------
# JSON round trip. Rationals are "num/den" texts throughout.
# ---------------------------------------------------------------------------


def certificate_to_json(cert) -> dict:
    if isinstance(cert, SurvivalCertificate):
        return {
            "kind": "survival",
            "x": format_rational(cert.x),
            "bounds": [[format_rational(a), format_rational(b)] for a, b in cert.bounds],
            "rounds": cert.rounds,
        }
    if isinstance(cert, EliminationCertificate):
        return {
            "kind": "elimination",
            "value": format_rational(cert.value),
            "index": cert.index,
            "enumeration": cert.enumeration,
        }
    if isinstance(cert, BracketCertificate):
        return {
            "kind": "bracket",
            "lo": format_rational(cert.lo),
            "hi": format_rational(cert.hi),
            "round": cert.round_index,
        }
    if isinstance(cert, NestedCoreCertificate):
        return {
            "kind": "nestedCore",
            "entries": [[r, format_rational(left), depth] for r, left, depth in cert.entries],
            "finalMargin": cert.final_margin,
        }
    if isinstance(cert, BMDisjointCertificate):
        return {
            "kind": "bmDisjoint",
            "finalLo": format_rational(cert.final_lo),
            "finalHi": format_rational(cert.final_hi),
            "gapLo": format_rational(cert.gap_lo),
            "gapHi": format_rational(cert.gap_hi),
            "gapDepth": cert.gap_depth,
        }
    raise TypeError(f"not a certificate: {cert!r}")


def certificate_from_json(obj: dict):
    kind = obj.get("kind")
    if kind == "survival":
        return SurvivalCertificate(
            x=parse_rational(obj["x"]),
            bounds=tuple((parse_rational(a), parse_rational(b)) for a, b in obj["bounds"]),
            rounds=int(obj["rounds"]),
        )
    if kind == "elimination":
        return EliminationCertificate(
            value=parse_rational(obj["value"]),
            index=int(obj["index"]),
            enumeration=obj.get("enumeration", ""),
        )
    if kind == "bracket":
        return BracketCertificate(
            lo=parse_rational(obj["lo"]),
            hi=parse_rational(obj["hi"]),
            round_index=int(obj["round"]),
        )
    if kind == "nestedCore":
        return NestedCoreCertificate(
            entries=tuple((int(r), parse_rational(left), int(depth)) for r, left, depth in obj["entries"]),
            final_margin=int(obj["finalMargin"]),
        )
    if kind == "bmDisjoint":
        return BMDisjointCertificate(
            final_lo=parse_rational(obj["finalLo"]),
            final_hi=parse_rational(obj["finalHi"]),
            gap_lo=parse_rational(obj["gapLo"]),
            gap_hi=parse_rational(obj["gapHi"]),
            gap_depth=int(obj["gapDepth"]),
        )
    raise ValueError(f"unknown certificate kind {kind!r}")


def validate(cert, tr) -> tuple[bool, str]:
    """Dispatch to the matching validator for a move-log transcript."""
    if isinstance(cert, SurvivalCertificate):
        return validate_survival(cert, tr)
    if isinstance(cert, EliminationCertificate):
        return validate_elimination(cert, tr)
    if isinstance(cert, BracketCertificate):
        return validate_bracket(cert, tr)
    if isinstance(cert, NestedCoreCertificate):
        return validate_nested_core(cert, tr)
    raise TypeError(f"no move-log validator for {type(cert).__name__}")


def dump_certificates(certs: Sequence) -> str:
    return json.dumps(
        {"certificates": [certificate_to_json(c) for c in certs]},
        sort_keys=True,
        separators=(",", ":"),
    )


def load_certificates(text: str) -> list:
    doc = json.loads(text)
    return [certificate_from_json(obj) for obj in doc["certificates"]]
