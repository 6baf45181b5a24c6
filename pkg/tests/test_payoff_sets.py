"""Membership, enumeration, refinement and dodge oracles."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from linegames.errors import CapabilityMissing, NoRefinement
from linegames.numeric_order import Interval, POS_INF, NEG_INF
from linegames.payoff_sets import (
    ROOT_CORE,
    CantorCore,
    CantorDust,
    FinitePointSet,
    IntegerLattice,
    avoid,
    cantor_contains,
    cantor_refine,
    cantor_set,
    complement_in_interval,
    finite_set,
    is_left_endpoint,
    rationals_between,
    union_of,
)

# cycle detection in exact ternary membership costs O(denominator), so
# cap the denominators hypothesis may draw
unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=3**7)


def ternary_digit_oracle(x: F, name_hint="") -> bool:
    """Independent membership oracle via the eventually periodic ternary
    expansion: greedy digits (preperiod + cycle detection on remainders);
    a rational belongs iff all digits are 0/2, or the expansion terminates
    with a single final 1 (the 1 0^w = 0 2^w rewrite)."""
    if x < 0 or x > 1:
        return False
    if x == 1:
        return True
    digits = []
    seen = {}
    r = x
    while r not in seen:
        seen[r] = len(digits)
        d = (3 * r).__floor__()
        digits.append(d)
        r = 3 * r - d
    cycle_start = seen[r]
    preperiod, cycle = digits[:cycle_start], digits[cycle_start:]
    if all(d != 1 for d in preperiod + cycle):
        return True
    # terminating expansions show up as a cycle of a single 0
    if cycle == [0] and preperiod and preperiod[-1] == 1:
        return all(d != 1 for d in preperiod[:-1])
    return False


def brute_force_refine(core: CantorCore, bounds: Interval, max_extra: int = 8):
    """Independent oracle: explicitly enumerate descendants by depth then
    left to right, return the first fitting one."""
    for extra in range(1, max_extra + 1):
        depth = core.depth + extra
        width = F(1, 3**depth)
        for suffix in range(3**extra):
            digits = []
            s = suffix
            for _ in range(extra):
                s, d = divmod(s, 3)
                digits.append(d)
            if any(d == 1 for d in digits):
                continue
            left = core.left + suffix * width
            if bounds.lo < left and left + width < bounds.hi:
                return CantorCore(depth=depth, left=left)
    return None


class TestCantorMembership:
    def test_reference_points(self):
        assert cantor_contains(F(1, 4))  # 0.020202... in ternary
        assert not cantor_contains(F(1, 2))  # first ternary digit 1
        assert cantor_contains(F(0)) and cantor_contains(F(1))
        assert cantor_contains(F(1, 3)) and cantor_contains(F(2, 3))
        assert cantor_contains(F(1, 10)) and cantor_contains(F(3, 10))
        assert not cantor_contains(F(1, 5))
        assert not cantor_contains(F(-1, 4)) and not cantor_contains(F(5, 4))

    @settings(max_examples=300, deadline=None)
    @given(unit_rationals)
    def test_matches_digit_oracle(self, x):
        assert cantor_contains(x) == ternary_digit_oracle(x)

    @given(st.integers(min_value=0, max_value=3**10))
    def test_dense_grid_against_oracle(self, n):
        x = F(n, 3**10)
        assert cantor_contains(x) == ternary_digit_oracle(x)


class TestLeftEndpoints:
    def test_examples(self):
        assert is_left_endpoint(F(0), 0)
        assert is_left_endpoint(F(2, 3), 1)
        assert is_left_endpoint(F(2, 9), 2)
        assert not is_left_endpoint(F(1, 3), 1)  # digit 1
        assert not is_left_endpoint(F(1, 2), 4)  # not a ternary grid point
        assert not is_left_endpoint(F(2, 3), 0)

    @given(st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=3**6))
    def test_endpoints_are_members(self, depth, raw):
        left = F(raw % (3**depth + 1), 3**depth)
        if is_left_endpoint(left, depth):
            assert cantor_contains(left)


class TestCantorRefine:
    def test_root_inside_unit_interval(self):
        # frozen from the brute-force oracle: depth-1 children fail
        # (left endpoint 0 and right end 1 touch the bounds), first fit
        # is the second child at depth 2
        expected = CantorCore(depth=2, left=F(2, 9))
        assert brute_force_refine(ROOT_CORE, Interval(F(0), F(1))) == expected
        assert cantor_refine(ROOT_CORE, Interval(F(0), F(1))) == expected

    def test_deep_left_spine(self):
        # frozen from the brute-force oracle: [56/81, 57/81] pokes above
        # 7/10, the depth-5 sibling [164/243, 165/243] is first to fit
        core = CantorCore(depth=3, left=F(2, 3))
        expected = CantorCore(depth=5, left=F(164, 243))
        assert brute_force_refine(core, Interval(F(2, 3), F(7, 10))) == expected
        assert cantor_refine(core, Interval(F(2, 3), F(7, 10))) == expected

    def test_disjoint_bounds(self):
        with pytest.raises(NoRefinement):
            cantor_refine(CantorCore(depth=2, left=F(2, 9)), Interval(F(1, 2), F(3, 5)), max_depth=16)

    def test_unbounded_sides(self):
        core = cantor_refine(ROOT_CORE, Interval(NEG_INF, POS_INF))
        assert core == CantorCore(depth=1, left=F(0))

    @settings(max_examples=120, deadline=None)
    @given(unit_rationals, unit_rationals)
    def test_matches_oracle_and_nests(self, a, b):
        if a == b:
            return
        bounds = Interval(min(a, b), max(a, b))
        expected = brute_force_refine(ROOT_CORE, bounds)
        if expected is None:
            with pytest.raises(NoRefinement):
                cantor_refine(ROOT_CORE, bounds, max_depth=8)
            return
        got = cantor_refine(ROOT_CORE, bounds, max_depth=8)
        assert got == expected
        assert is_left_endpoint(got.left, got.depth)
        assert ROOT_CORE.contains_core(got)
        assert bounds.lo < got.left and got.right < bounds.hi

    def test_chain_shrinks_geometrically(self):
        core, hi = ROOT_CORE, F(1)
        widths = [core.width]
        for _ in range(6):
            core = cantor_refine(core, Interval(core.left, hi))
            hi = core.right
            widths.append(core.width)
        assert all(w1 <= w0 / 3 for w0, w1 in zip(widths, widths[1:]))


class TestEnumerations:
    def test_unit_rationals_prefix(self):
        W = rationals_between(0, 1)
        assert [W.enumerate(i) for i in range(9)] == [
            F(0), F(1), F(1, 2), F(1, 3), F(2, 3), F(1, 4), F(2, 5), F(3, 5), F(3, 4),
        ]

    def test_finite_set_order_and_end(self):
        W = finite_set([F(1, 2), F(1, 4), F(3, 4)])
        assert [W.enumerate(i) for i in range(4)] == [F(1, 2), F(1, 4), F(3, 4), None]
        assert W.contains(F(1, 2)) and not W.contains(F(1, 3))

    def test_missing_capability(self):
        with pytest.raises(CapabilityMissing):
            cantor_set().enumerate(0)

    def test_coherence_at_scale(self):
        """contains(enumerate(n)) for n below 10^4, and no repeats."""
        W = rationals_between(0, 1)
        seen = set()
        for n in range(10**4):
            v = W.enumerate(n)
            assert W.contains(v)
            assert v not in seen
            seen.add(v)

    def test_affine_interval(self):
        W = rationals_between(F(1, 3), F(2, 3))
        values = [W.enumerate(i) for i in range(64)]
        assert all(F(1, 3) <= v <= F(2, 3) for v in values)
        assert len(set(values)) == 64

    def test_union_and_complement(self):
        U = union_of([finite_set([F(1, 2)]), finite_set([F(1, 2), F(1, 4)])])
        assert [U.enumerate(i) for i in range(3)] == [F(1, 2), F(1, 4), None]
        assert U.contains(F(1, 4)) and not U.contains(F(3, 4))
        C = complement_in_interval(cantor_set(), 0, 1)
        assert C.contains(F(1, 2)) and not C.contains(F(1, 4)) and not C.contains(F(3, 2))
        assert not C.can_enumerate


class TestAvoid:
    def test_singleton(self):
        piece = FinitePointSet([F(1, 2)])
        assert avoid(piece, Interval(F(0), F(1))) == Interval(F(0), F(1, 2))

    def test_cantor_middle_third(self):
        assert avoid(CantorDust(), Interval(F(0), F(1))) == Interval(F(1, 3), F(2, 3))

    def test_already_disjoint(self):
        assert avoid(IntegerLattice(), Interval(F(1, 4), F(1, 2))) == Interval(F(1, 4), F(1, 2))
        assert avoid(IntegerLattice(), Interval(F(0), F(5))) == Interval(F(0), F(1))

    def test_cantor_off_side_pieces(self):
        dust = CantorDust()
        assert avoid(dust, Interval(F(2), F(3))) == Interval(F(2), F(3))
        assert avoid(dust, Interval(F(-1), F(1, 2))) == Interval(F(-1), F(0))
        assert avoid(dust, Interval(F(1, 2), F(2))) == Interval(F(1), F(2))

    @settings(max_examples=150, deadline=None)
    @given(unit_rationals, unit_rationals)
    def test_dodge_soundness_by_sampling(self, a, b):
        """Returned subintervals never contain a member: dyadic sampling
        plus exact membership."""
        if a == b:
            return
        interval = Interval(min(a, b), max(a, b))
        for piece in (CantorDust(), FinitePointSet([F(1, 3), F(1, 2), F(2, 3)]), IntegerLattice()):
            out = avoid(piece, interval)
            assert not out.is_empty()
            assert interval.lo <= out.lo and out.hi <= interval.hi
            lo, hi = F(out.lo), F(out.hi)
            samples = [lo + (hi - lo) * F(k, 1024) for k in range(1, 1024, 31)]
            assert all(not piece.contains(s) for s in samples)

    def test_gap_depth_reporting(self):
        gap, depth = CantorDust().avoid_gap(Interval(F(0), F(1)))
        assert gap == Interval(F(1, 3), F(2, 3)) and depth == 1
        gap, depth = CantorDust().avoid_gap(Interval(F(0), F(1, 4)))
        assert depth >= 2 and gap.hi - gap.lo == F(1, 3**depth)
