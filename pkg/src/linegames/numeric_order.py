"""Exact ordered arithmetic for game play.

Rationals (stdlib Fraction, always lowest terms, positive denominator),
two infinity sentinels that compare but never compute, open intervals,
pluggable linear orders, and a digit-framing codec that hides a byte
payload inside an ordinary rational from a prescribed open interval.
Nothing in this module ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import IntervalEmpty, NotEncoded

Rat = Fraction


class _Infinity:
    """Ordered sentinel. Compares against any finite number; arithmetic is
    deliberately unsupported so an accidental ``inf + x`` fails loudly."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return self is other or self < other

    def __ge__(self, other):
        return self is other or self > other

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(("linegames-inf", self.sign))

    def __neg__(self):
        return NEG_INF if self.sign > 0 else POS_INF

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)

ExtRat = Union[Fraction, int, _Infinity]


def is_finite(x: ExtRat) -> bool:
    return not isinstance(x, _Infinity)


def format_rational(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    t = text.strip()
    try:
        if "/" in t:
            num, den = t.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(t)  # accepts "3" and "0.25" for human input
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_ext(x: ExtRat) -> str:
    if isinstance(x, _Infinity):
        return repr(x)
    return format_rational(x)


def parse_ext(text: str) -> ExtRat:
    t = text.strip()
    if t in ("+inf", "inf"):
        return POS_INF
    if t == "-inf":
        return NEG_INF
    return parse_rational(t)


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi); either end may be an infinity sentinel."""

    lo: ExtRat
    hi: ExtRat

    def is_empty(self) -> bool:
        return not self.lo < self.hi

    def contains(self, x) -> bool:
        return self.lo < x < self.hi

    def __repr__(self):
        return f"({format_ext(self.lo)}, {format_ext(self.hi)})"


class OrderedDomain:
    """A linear order the games can be played on.

    ``pick_between`` is the deterministic canonical chooser; it returns
    None exactly when no element lies strictly inside the open interval,
    which is how discrete orders force the immediate-loss verdict.
    """

    name = "abstract"
    dense = False

    def contains(self, x) -> bool:
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def compare(self, x, y) -> int:
        return (x > y) - (x < y)

    def pick_between(self, lo: ExtRat, hi: ExtRat):
        raise NotImplementedError


class RationalDomain(OrderedDomain):
    """The rational line. Conventions for unbounded picks: (lo, +inf) -> lo+1,
    (-inf, hi) -> hi-1, (-inf, +inf) -> 0; finite bounds take the midpoint."""

    name = "rationals"
    dense = True

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def coerce(self, value) -> Fraction:
        return Fraction(value)

    def pick_between(self, lo: ExtRat, hi: ExtRat) -> Optional[Fraction]:
        if not lo < hi:
            return None
        if not is_finite(lo) and not is_finite(hi):
            return Fraction(0)
        if not is_finite(hi):
            return Fraction(lo) + 1
        if not is_finite(lo):
            return Fraction(hi) - 1
        return (Fraction(lo) + Fraction(hi)) / 2


class IntegerDomain(OrderedDomain):
    """The integers embedded in the line; consecutive bounds admit no move."""

    name = "integers"
    dense = False

    def contains(self, x) -> bool:
        if isinstance(x, bool):
            return False
        if isinstance(x, int):
            return True
        return isinstance(x, Fraction) and x.denominator == 1

    def coerce(self, value) -> int:
        f = Fraction(value)
        if f.denominator != 1:
            raise ValueError(f"{value} is not an integer")
        return int(f)

    def pick_between(self, lo: ExtRat, hi: ExtRat) -> Optional[int]:
        if not lo < hi:
            return None
        if not is_finite(lo) and not is_finite(hi):
            return 0
        if not is_finite(hi):
            return self.coerce(lo) + 1
        if not is_finite(lo):
            return self.coerce(hi) - 1
        mid = (self.coerce(lo) + self.coerce(hi)) // 2
        return mid if lo < mid < hi else None


DOMAINS = {d.name: d for d in (RationalDomain(), IntegerDomain())}


def domain_by_name(name: str) -> OrderedDomain:
    try:
        return DOMAINS[name]
    except KeyError:
        raise KeyError(f"unknown domain {name!r}; known: {sorted(DOMAINS)}") from None


def pick_between(domain: OrderedDomain, lo: ExtRat, hi: ExtRat):
    return domain.pick_between(lo, hi)


def rational_witness(lo, hi) -> Fraction:
    """Smallest-denominator dyadic strictly inside (lo, hi).

    Denominators are scanned in the order 1, 2, 4, ...; within a
    denominator the leftmost (smallest-numerator) candidate wins. Keeps
    transcript bit sizes polynomial in the round count.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not lo < hi:
        raise IntervalEmpty(f"empty interval ({lo}, {hi})")
    den = 1
    while True:
        num = (lo.numerator * den) // lo.denominator + 1
        cand = Fraction(num, den)
        if cand < hi:
            return cand
        den *= 2


def is_dyadic(x) -> bool:
    f = Fraction(x)
    d = f.denominator
    return d & (d - 1) == 0


def random_legal(rng, domain: OrderedDomain, lo: ExtRat, hi: ExtRat):
    """Seeded random element strictly inside (lo, hi).

    Dense picks are snapped to the smallest-denominator dyadic of a random
    subinterval so transcript bit sizes stay polynomial in the round count.
    The caller guarantees the interval holds at least one domain element.
    """
    if domain.dense:
        a = Fraction(lo) if is_finite(lo) else (Fraction(hi) - 2 if is_finite(hi) else Fraction(-1))
        b = Fraction(hi) if is_finite(hi) else a + 2
        j = rng.randrange(1, 64)
        return rational_witness(a, a + (b - a) * Fraction(j, 64))
    if not is_finite(lo) and not is_finite(hi):
        return domain.coerce(rng.randint(-8, 8))
    if not is_finite(hi):
        base = domain.coerce(lo) + 1
        return rng.randint(base, base + 7)
    if not is_finite(lo):
        top = domain.coerce(hi) - 1
        return rng.randint(top - 7, top)
    return rng.randint(domain.coerce(lo) + 1, domain.coerce(hi) - 1)


# ---------------------------------------------------------------------------
# Digit-framing codec.
#
# A value carrying payload bytes looks, in decimal, like
#
#     [anchor digits] 9 [payload digits over 0..8] 9
#
# where the closing 9 is the final fractional digit. The anchor is the
# truncation of the interval midpoint at the least precision p whose closed
# slot of width 10^-p fits inside the target interval, so every framed value
# stays strictly inside no matter how long the payload runs. Decoding needs
# only the number itself: take the terminating decimal expansion, match the
# final digit 9, scan left to the previous 9, and read the digits between.
# Payload bytes are written per byte in base 8 with the digit 8 as separator,
# so the digits between the sentinels never contain a 9.
# ---------------------------------------------------------------------------

_SEPARATOR = "8"


def _payload_to_digits(payload: bytes) -> str:
    return _SEPARATOR.join(format(b, "o") for b in payload)


def _digits_to_payload(digits: str) -> bytes:
    if digits == "":
        return b""
    out = bytearray()
    for piece in digits.split(_SEPARATOR):
        if not piece or (len(piece) > 1 and piece[0] == "0"):
            raise NotEncoded(f"malformed payload group {piece!r}")
        value = int(piece, 8)
        if value > 255:
            raise NotEncoded(f"payload group out of byte range: {piece!r}")
        out.append(value)
    return bytes(out)


def _terminating_digits(r: Fraction) -> Optional[tuple[int, str]]:
    """(digit count, fractional digit string) of |r|, or None if the
    decimal expansion of r does not terminate."""
    den = r.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    d = max(twos, fives)
    if d == 0:
        return 0, ""
    scaled = abs(r.numerator) * 10**d // r.denominator
    return d, str(scaled % 10**d).zfill(d)


def encode_history(payload: bytes, lo, hi) -> Fraction:
    """Embed payload into a rational strictly inside (lo, hi).

    Injective in the payload for a fixed frame layout; the result decodes
    with decode_history alone, no interval needed.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not lo < hi:
        raise IntervalEmpty(f"empty interval ({lo}, {hi})")
    mid = (lo + hi) / 2
    negative = mid < 0
    mag = -mid if negative else mid
    precision = 0
    while True:
        scale = 10**precision
        anchor = Fraction(mag.numerator * scale // mag.denominator, scale)
        if negative:
            slot_lo, slot_hi = -anchor - Fraction(1, scale), -anchor
        else:
            slot_lo, slot_hi = anchor, anchor + Fraction(1, scale)
        if lo < slot_lo and slot_hi < hi:
            break
        precision += 1
    frame = "9" + _payload_to_digits(payload) + "9"
    value = anchor + Fraction(int(frame), 10 ** (precision + len(frame)))
    return -value if negative else value


def decode_history(r) -> bytes:
    """Inverse of encode_history on its range; NotEncoded otherwise."""
    r = Fraction(r)
    expansion = _terminating_digits(r)
    if expansion is None:
        raise NotEncoded(f"{r} has no terminating decimal expansion")
    count, digits = expansion
    if count == 0 or not digits.endswith("9"):
        raise NotEncoded(f"{r} lacks a closing sentinel digit")
    opener = digits.rfind("9", 0, count - 1)
    if opener < 0:
        raise NotEncoded(f"{r} lacks an opening sentinel digit")
    return _digits_to_payload(digits[opener + 1 : count - 1])


@dataclass(frozen=True)
class EncodedMove:
    """A framed rational together with the payload it carries."""

    value: Fraction
    payload: bytes


def encode_move(payload: bytes, lo, hi) -> EncodedMove:
    return EncodedMove(value=encode_history(payload, lo, hi), payload=payload)
