"""Order laws, canonical picks, and the dyadic witness."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from linegames.errors import IntervalEmpty
from linegames.numeric_order import (
    DOMAINS,
    NEG_INF,
    POS_INF,
    IntegerDomain,
    Interval,
    RationalDomain,
    domain_by_name,
    format_ext,
    format_rational,
    is_dyadic,
    parse_ext,
    parse_rational,
    pick_between,
    rational_witness,
)

rationals = st.fractions(min_value=-100, max_value=100)


def brute_force_witness(lo: F, hi: F, max_den: int = 1 << 400) -> F:
    """Independent oracle: scan dyadics by denominator then numerator."""
    den = 1
    while den <= max_den:
        num = (lo.numerator * den) // lo.denominator + 1
        while F(num, den) <= lo:
            num += 1
        if F(num, den) < hi:
            return F(num, den)
        den *= 2
    raise AssertionError("oracle ran out of denominators")


class TestSentinels:
    def test_total_order(self):
        assert NEG_INF < F(-(10**50)) < F(10**50) < POS_INF
        assert NEG_INF < POS_INF
        assert not NEG_INF < NEG_INF
        assert POS_INF == POS_INF and NEG_INF != POS_INF

    def test_reflected_comparisons(self):
        assert F(1, 2) < POS_INF and F(1, 2) > NEG_INF
        assert 3 < POS_INF and -3 > NEG_INF
        assert POS_INF > 10**100

    def test_negation(self):
        assert -POS_INF is NEG_INF and -NEG_INF is POS_INF

    def test_no_arithmetic(self):
        with pytest.raises(TypeError):
            POS_INF + 1  # noqa: B018

    @given(rationals)
    def test_every_rational_between(self, x):
        assert NEG_INF < x < POS_INF


class TestSerialization:
    def test_rational_text(self):
        assert format_rational(F(599, 1000)) == "599/1000"
        assert parse_rational("599/1000") == F(599, 1000)
        assert parse_rational("0.25") == F(1, 4)
        assert parse_rational(" 3 ") == 3

    def test_ext_text(self):
        assert format_ext(POS_INF) == "+inf"
        assert format_ext(NEG_INF) == "-inf"
        assert parse_ext("+inf") is POS_INF
        assert parse_ext("-inf") is NEG_INF

    def test_bad_text(self):
        with pytest.raises(ValueError):
            parse_rational("abc")
        with pytest.raises(ValueError):
            parse_rational("1/0")

    @given(rationals)
    def test_round_trip(self, x):
        assert parse_rational(format_rational(x)) == x


class TestPickBetween:
    def test_rationals_examples(self):
        dom = RationalDomain()
        assert pick_between(dom, F(0), F(1)) == F(1, 2)
        assert pick_between(dom, F(0), POS_INF) == 1
        assert pick_between(dom, NEG_INF, F(0)) == -1
        assert pick_between(dom, NEG_INF, POS_INF) == 0

    def test_integers_examples(self):
        dom = IntegerDomain()
        assert pick_between(dom, 3, 4) is None
        assert pick_between(dom, 3, 5) == 4
        assert pick_between(dom, -5, -4) is None
        assert pick_between(dom, 7, POS_INF) == 8
        assert pick_between(dom, NEG_INF, 7) == 6
        assert pick_between(dom, NEG_INF, POS_INF) == 0

    def test_empty_interval_gives_none(self):
        for dom in DOMAINS.values():
            assert pick_between(dom, F(1), F(1)) is None
            assert pick_between(dom, F(2), F(1)) is None

    @given(st.sampled_from(sorted(DOMAINS)), rationals, rationals)
    def test_respects_bounds_and_is_deterministic(self, name, a, b):
        """Order law: any pick lies strictly inside; repeat calls agree."""
        dom = domain_by_name(name)
        lo, hi = min(a, b), max(a, b)
        if dom is DOMAINS["integers"]:
            lo, hi = F(lo.__floor__()), F(hi.__ceil__())
        picked = pick_between(dom, lo, hi)
        assert picked == pick_between(dom, lo, hi)
        if picked is not None:
            assert lo < picked < hi
            assert dom.contains(picked)
        elif dom.dense:
            assert Interval(lo, hi).is_empty()

    @given(rationals, rationals)
    def test_dense_never_none_on_nonempty(self, a, b):
        dom = RationalDomain()
        if a != b:
            assert pick_between(dom, min(a, b), max(a, b)) is not None


class TestRationalWitness:
    def test_examples(self):
        assert rational_witness(F(0), F(1)) == F(1, 2)
        assert rational_witness(F(1, 3), F(2, 3)) == F(1, 2)
        # frozen from the brute-force oracle
        assert brute_force_witness(F(5, 8), F(11, 16)) == F(21, 32)
        assert rational_witness(F(5, 8), F(11, 16)) == F(21, 32)

    def test_empty(self):
        with pytest.raises(IntervalEmpty):
            rational_witness(F(1), F(1))

    @given(rationals, rationals)
    def test_matches_oracle_and_is_dyadic(self, a, b):
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        w = rational_witness(lo, hi)
        assert lo < w < hi
        assert is_dyadic(w)
        assert w == brute_force_witness(lo, hi)

    @settings(max_examples=25)
    @given(st.integers(min_value=1, max_value=60))
    def test_denominator_grows_with_precision_only(self, k):
        """Witness denominators stay near the interval's scale."""
        lo = F(1, 3)
        hi = lo + F(1, 2**k)
        w = rational_witness(lo, hi)
        assert lo < w < hi
        assert w.denominator <= 2 ** (k + 2)


class TestDomains:
    def test_registry(self):
        assert domain_by_name("rationals").dense
        assert not domain_by_name("integers").dense
        with pytest.raises(KeyError):
            domain_by_name("surreals")

    def test_integer_coercion(self):
        dom = IntegerDomain()
        assert dom.coerce(F(4, 2)) == 2
        with pytest.raises(ValueError):
            dom.coerce(F(1, 2))
        assert dom.contains(3) and dom.contains(F(3)) and not dom.contains(F(1, 2))
        assert not dom.contains(True)

    def test_compare(self):
        dom = RationalDomain()
        assert dom.compare(F(1, 3), F(1, 2)) == -1
        assert dom.compare(F(1, 2), F(1, 2)) == 0
        assert dom.compare(F(2, 3), F(1, 2)) == 1
