"""Payoff sets with graded capabilities.

Every set supports exact membership. Countable sets may advertise a
canonical enumeration (finite sets in given order, rationals of an
interval in mediant-tree order). The middle-thirds set supports
construction-interval refinement for perfect-set play, and sets that are
small in the topological sense supply nowhere-dense pieces with a
deterministic ``avoid`` oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .errors import CapabilityMissing, NoRefinement, OracleFault
from .numeric_order import Interval, is_finite

# ---------------------------------------------------------------------------
# Middle-thirds membership, exactly, for rationals.
# ---------------------------------------------------------------------------


def cantor_contains(x) -> bool:
    """Exact membership of a rational in the middle-thirds set.

    Iterates the expanding map (x -> 3x on the left third, 3x-2 on the
    right third); a rational orbit lives on a finite state set, so either
    it falls into the open middle third (reject) or it cycles (accept).
    Endpoints with two ternary expansions come out right: 1/3 -> 1 -> 1.
    """
    x = Fraction(x)
    if x < 0 or x > 1:
        return False
    seen = set()
    while x not in seen:
        seen.add(x)
        tripled = 3 * x
        if tripled <= 1:
            x = tripled
        elif tripled >= 2:
            x = tripled - 2
        else:
            return False
    return True


def is_left_endpoint(left: Fraction, depth: int) -> bool:
    """True iff [left, left + 3^-depth] is a construction interval, i.e.
    left * 3^depth is an integer whose depth ternary digits are all 0 or 2."""
    if depth < 0:
        return False
    left = Fraction(left)
    if left < 0 or left > 1:
        return False
    scaled = left * 3**depth
    if scaled.denominator != 1:
        return False
    v = scaled.numerator
    for _ in range(depth):
        v, digit = divmod(v, 3)
        if digit == 1:
            return False
    return v == 0


@dataclass(frozen=True)
class CantorCore:
    """A construction interval [left, left + 3^-depth] of the middle-thirds set."""

    depth: int
    left: Fraction

    @property
    def width(self) -> Fraction:
        return Fraction(1, 3**self.depth)

    @property
    def right(self) -> Fraction:
        return self.left + self.width

    def contains_core(self, other: "CantorCore") -> bool:
        return self.left <= other.left and other.right <= self.right


ROOT_CORE = CantorCore(depth=0, left=Fraction(0))


def _min_02_numeral(ndigits: int, above, below) -> Optional[int]:
    """Least integer with exactly ndigits base-3 digits, all 0 or 2,
    strictly between the rational bounds (either may be None)."""

    def feasible_min(prefix: int, rem: int) -> Optional[int]:
        lo_v = prefix * 3**rem
        hi_v = lo_v + 3**rem - 1
        if above is not None and hi_v <= above:
            return None
        if below is not None and lo_v >= below:
            return None
        if rem == 0:
            ok = (above is None or prefix > above) and (below is None or prefix < below)
            return prefix if ok else None
        for digit in (0, 2):
            found = feasible_min(prefix * 3 + digit, rem - 1)
            if found is not None:
                return found
        return None

    return feasible_min(0, ndigits)


def cantor_refine(core: CantorCore, bounds: Interval, max_depth: int = 512) -> CantorCore:
    """Deepest-first-fit refinement: scan descendants of ``core`` breadth
    first by depth, left to right, and return the first construction
    interval lying strictly inside ``bounds`` with its left endpoint
    strictly above bounds.lo. NoRefinement past ``max_depth``."""
    if bounds.is_empty():
        raise NoRefinement(f"empty bounds {bounds}")
    for extra in range(1, max(1, max_depth - core.depth) + 1):
        depth = core.depth + extra
        scale = 3**depth
        above = (Fraction(bounds.lo) - core.left) * scale if is_finite(bounds.lo) else None
        below = (Fraction(bounds.hi) - core.left) * scale - 1 if is_finite(bounds.hi) else None
        offset = _min_02_numeral(extra, above, below)
        if offset is not None:
            return CantorCore(depth=depth, left=core.left + Fraction(offset, scale))
    raise NoRefinement(f"no construction interval of depth <= {max_depth} inside {bounds}")


# ---------------------------------------------------------------------------
# Nowhere-dense sets with a deterministic dodge oracle.
# ---------------------------------------------------------------------------


class NowhereDenseSet:
    """A set whose closure contains no interval, with an ``avoid`` oracle
    producing a nonempty open rational subinterval disjoint from it."""

    name = "nowhere-dense"

    def contains(self, x) -> bool:
        raise NotImplementedError

    def avoid(self, interval: Interval) -> Interval:
        raise NotImplementedError


class FinitePointSet(NowhereDenseSet):
    def __init__(self, points: Sequence, name: str = ""):
        self.points = tuple(sorted(Fraction(p) for p in points))
        self.name = name or f"finite[{len(self.points)}]"

    def contains(self, x) -> bool:
        return Fraction(x) in set(self.points)

    def avoid(self, interval: Interval) -> Interval:
        if interval.is_empty():
            raise OracleFault("avoid on empty interval")
        inside = [p for p in self.points if interval.contains(p)]
        if not inside:
            return interval
        return Interval(interval.lo, inside[0])


class CantorDust(NowhereDenseSet):
    """The middle-thirds set viewed as one nowhere-dense piece."""

    name = "cantor"

    def contains(self, x) -> bool:
        return cantor_contains(x)

    def avoid(self, interval: Interval) -> Interval:
        gap, _ = self.avoid_gap(interval)
        return gap

    def avoid_gap(self, interval: Interval, max_depth: int = 64) -> tuple[Interval, int]:
        """A removed middle third (or an off-[0,1] piece) inside the
        interval, plus its construction depth (0 for off-side pieces).
        Gaps are scanned breadth first by depth, left to right."""
        if interval.is_empty():
            raise OracleFault("avoid on empty interval")
        lo, hi = interval.lo, interval.hi
        if (is_finite(hi) and hi <= 0) or lo >= 1:
            return interval, 0
        if lo < 0:
            return Interval(lo, Fraction(0)), 0
        if not is_finite(hi) or hi > 1:
            return Interval(Fraction(1), hi), 0
        lo, hi = Fraction(lo), Fraction(hi)
        for depth in range(1, max_depth + 1):
            scale = 3 ** (depth - 1)
            width = Fraction(1, 3**depth)
            # prefix value v over depth-1 ternary digits in {0,2}; the gap is
            # (v/scale + width, v/scale + 2*width); containment in [lo, hi]
            # translates to ceil/floor bounds on v
            above = math.ceil((lo - width) * scale) - 1
            below = math.floor((hi - 2 * width) * scale) + 1
            v = _min_02_numeral(depth - 1, above, below)
            if v is not None:
                left = Fraction(v, scale)
                return Interval(left + width, left + 2 * width), depth
        raise OracleFault(f"no removed gap of depth <= {max_depth} inside {interval}")


class IntegerLattice(NowhereDenseSet):
    name = "integers"

    def contains(self, x) -> bool:
        return Fraction(x).denominator == 1

    def avoid(self, interval: Interval) -> Interval:
        if interval.is_empty():
            raise OracleFault("avoid on empty interval")
        lo, hi = interval.lo, interval.hi
        if not is_finite(lo):
            if not is_finite(hi):
                return Interval(Fraction(0), Fraction(1))
            h = Fraction(hi)
            n = int(h) - 1 if h.denominator == 1 else math.floor(h)
            return Interval(Fraction(n), min(h, Fraction(n + 1)))
        first_above = math.floor(Fraction(lo)) + 1
        if not interval.contains(first_above):
            return interval
        return Interval(lo, Fraction(first_above))


# ---------------------------------------------------------------------------
# Payoff sets proper.
# ---------------------------------------------------------------------------


class PayoffSet:
    """Capability record for a payoff set W.

    contains is mandatory and exact; an enumerator, a middle-thirds core
    and nowhere-dense pieces are optional and checked when a strategy
    binds to the set.
    """

    def __init__(
        self,
        name: str,
        contains: Callable[[Fraction], bool],
        enumerator: Optional[Callable[[int], Optional[Fraction]]] = None,
        has_cantor_core: bool = False,
        nd_piece: Optional[Callable[[int], Optional[NowhereDenseSet]]] = None,
    ):
        self.name = name
        self._contains = contains
        self._enumerator = enumerator
        self.has_cantor_core = has_cantor_core
        self._nd_piece = nd_piece

    @property
    def can_enumerate(self) -> bool:
        return self._enumerator is not None

    @property
    def has_nd_cover(self) -> bool:
        return self._nd_piece is not None

    def contains(self, x) -> bool:
        return self._contains(Fraction(x))

    def enumerate(self, n: int) -> Optional[Fraction]:
        if self._enumerator is None:
            raise CapabilityMissing(f"{self.name} has no enumeration")
        return self._enumerator(n)

    def nd_piece(self, n: int) -> Optional[NowhereDenseSet]:
        if self._nd_piece is None:
            raise CapabilityMissing(f"{self.name} has no nowhere-dense cover")
        return self._nd_piece(n)

    def root_core(self) -> CantorCore:
        if not self.has_cantor_core:
            raise CapabilityMissing(f"{self.name} has no middle-thirds core")
        return ROOT_CORE

    def __repr__(self):
        return f"PayoffSet({self.name!r})"


def contains(payoff: PayoffSet, x) -> bool:
    return payoff.contains(x)


def enumerate_member(payoff: PayoffSet, n: int) -> Optional[Fraction]:
    return payoff.enumerate(n)


def _mediant_rows() -> Iterator[Fraction]:
    """All rationals of [0, 1]: the endpoints, then each mediant level of
    the Stern-Brocot fan left to right. Mediants arrive in lowest terms."""
    yield Fraction(0)
    yield Fraction(1)
    row = [Fraction(0), Fraction(1)]
    while True:
        merged = [row[0]]
        for a, b in zip(row, row[1:]):
            m = Fraction(a.numerator + b.numerator, a.denominator + b.denominator)
            yield m
            merged += [m, b]
        row = merged


class _UnitRationals:
    """Memoized prefix of the canonical enumeration of [0, 1] rationals."""

    def __init__(self):
        self._gen = _mediant_rows()
        self._cache: list[Fraction] = []

    def __call__(self, n: int) -> Fraction:
        while len(self._cache) <= n:
            self._cache.append(next(self._gen))
        return self._cache[n]


def finite_set(values: Sequence, name: str = "") -> PayoffSet:
    ordered = tuple(Fraction(v) for v in values)
    if len(set(ordered)) != len(ordered):
        raise ValueError("finite payoff values must be distinct")
    members = set(ordered)
    label = name or f"finite[{len(ordered)}]"
    piece = FinitePointSet(ordered, name=label)
    return PayoffSet(
        name=label,
        contains=lambda x: x in members,
        enumerator=lambda n: ordered[n] if n < len(ordered) else None,
        nd_piece=lambda n: piece if n == 0 else None,
    )


def rationals_between(lo, hi, name: str = "") -> PayoffSet:
    """All rationals of the closed interval [lo, hi], enumerated by
    mapping the canonical [0, 1] order through the affine bijection."""
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    unit = _UnitRationals()
    span = hi - lo

    def enum(n: int) -> Fraction:
        return lo + unit(n) * span

    return PayoffSet(
        name=name or f"rationals[{lo},{hi}]",
        contains=lambda x: lo <= x <= hi,
        enumerator=enum,
        nd_piece=lambda n: FinitePointSet([enum(n)], name=f"point[{enum(n)}]"),
    )


def cantor_set() -> PayoffSet:
    dust = CantorDust()
    return PayoffSet(
        name="cantor",
        contains=cantor_contains,
        has_cantor_core=True,
        nd_piece=lambda n: dust if n == 0 else None,
    )


def union_of(parts: Sequence[PayoffSet], name: str = "") -> PayoffSet:
    parts = tuple(parts)
    enumerator = None
    if all(p.can_enumerate for p in parts):

        cache: list[Fraction] = []
        seen: set[Fraction] = set()
        cursors = [0] * len(parts)
        exhausted = [False] * len(parts)

        def enum(n: int) -> Optional[Fraction]:
            while len(cache) <= n:
                progressed = False
                for i, p in enumerate(parts):
                    if exhausted[i]:
                        continue
                    v = p.enumerate(cursors[i])
                    cursors[i] += 1
                    if v is None:
                        exhausted[i] = True
                        continue
                    progressed = True
                    if v not in seen:
                        seen.add(v)
                        cache.append(v)
                if not progressed and all(exhausted):
                    return None
            return cache[n]

        enumerator = enum

    nd = None
    if all(p.has_nd_cover for p in parts):

        def nd_piece(n: int) -> Optional[NowhereDenseSet]:
            # diagonal pairing over (part, piece index)
            i, j = n % len(parts), n // len(parts)
            return parts[i].nd_piece(j)

        nd = nd_piece

    return PayoffSet(
        name=name or "union(" + ",".join(p.name for p in parts) + ")",
        contains=lambda x: any(p.contains(x) for p in parts),
        enumerator=enumerator,
        nd_piece=nd,
    )


def complement_in_interval(inner: PayoffSet, lo, hi, name: str = "") -> PayoffSet:
    lo = Fraction(lo)
    hi = Fraction(hi)
    return PayoffSet(
        name=name or f"[{lo},{hi}] minus {inner.name}",
        contains=lambda x: lo <= x <= hi and not inner.contains(x),
    )


def avoid(piece: NowhereDenseSet, interval: Interval) -> Interval:
    """Dodge one nowhere-dense piece inside an open rational interval."""
    out = piece.avoid(interval)
    if out.is_empty():
        raise OracleFault(f"{piece.name} returned an empty dodge for {interval}")
    return out
