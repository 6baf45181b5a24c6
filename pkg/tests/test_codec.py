"""The digit-framing codec: frozen reference values and round-trip laws."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from linegames.errors import IntervalEmpty, NotEncoded
from linegames.numeric_order import decode_history, encode_history, encode_move

payloads = st.binary(max_size=64)
rationals = st.fractions(min_value=-1000, max_value=1000)


class TestReferenceFraming:
    """The documented layout: midpoint-truncation anchor, sentinel 9,
    payload digits over 0..8 (per byte in base 8, separated by 8s),
    closing sentinel 9 as the final fractional digit."""

    def test_empty_payload_unit_interval(self):
        value = encode_history(b"", F(0), F(1))
        assert value == F(599, 1000)
        assert decode_history(value) == b""

    def test_one_zero_byte(self):
        value = encode_history(b"\x00", F(0), F(1))
        assert value == F(5909, 10000)
        assert decode_history(value) == b"\x00"

    def test_decode_reference_values(self):
        assert decode_history(F(599, 1000)) == b""
        assert decode_history(F(5909, 10000)) == b"\x00"

    def test_empty_interval(self):
        with pytest.raises(IntervalEmpty):
            encode_history(b"anything", F(1), F(1))
        with pytest.raises(IntervalEmpty):
            encode_history(b"", F(2), F(1))

    def test_not_encoded(self):
        with pytest.raises(NotEncoded):
            decode_history(F(1, 3))  # no terminating expansion
        with pytest.raises(NotEncoded):
            decode_history(F(1, 2))  # terminates but no closing sentinel
        with pytest.raises(NotEncoded):
            decode_history(F(9, 100))  # "09": single sentinel
        with pytest.raises(NotEncoded):
            decode_history(F(5))  # integer, no fractional digits

    def test_malformed_payload_groups(self):
        # digits "9 00 9": leading zero inside a base-8 group
        with pytest.raises(NotEncoded):
            decode_history(F(9009, 10**4))
        # digits "9 777777 9": group value exceeds one byte
        with pytest.raises(NotEncoded):
            decode_history(F(97777779, 10**8))
        # digits "9 8 9": empty groups around the separator
        with pytest.raises(NotEncoded):
            decode_history(F(989, 1000))


class TestRoundTrip:
    @settings(max_examples=300, deadline=None)
    @given(payloads, rationals, rationals)
    def test_decode_inverts_encode_inside_interval(self, payload, a, b):
        """Round-trip law over arbitrary payloads and intervals."""
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        value = encode_history(payload, lo, hi)
        assert lo < value < hi
        assert decode_history(value) == payload

    @settings(max_examples=50, deadline=None)
    @given(payloads, st.integers(min_value=1, max_value=120))
    def test_tiny_intervals(self, payload, k):
        lo = F(1, 3)
        hi = lo + F(1, 10**k)
        value = encode_history(payload, lo, hi)
        assert lo < value < hi
        assert decode_history(value) == payload

    @settings(max_examples=100, deadline=None)
    @given(payloads, payloads)
    def test_injective_for_fixed_interval(self, p1, p2):
        v1 = encode_history(p1, F(0), F(1))
        v2 = encode_history(p2, F(0), F(1))
        assert (v1 == v2) == (p1 == p2)

    @given(payloads)
    def test_deterministic(self, payload):
        assert encode_history(payload, F(-3, 7), F(5, 7)) == encode_history(payload, F(-3, 7), F(5, 7))

    def test_negative_and_straddling_intervals(self):
        for lo, hi in [(F(-1), F(-1, 3)), (F(-2, 7), F(1, 5)), (F(-10), F(10)), (F(9, 10), F(91, 100))]:
            for payload in (b"", b"\x00", b"\xff\x08\x00", bytes(range(16))):
                value = encode_history(payload, lo, hi)
                assert lo < value < hi
                assert decode_history(value) == payload

    def test_encode_move_record(self):
        move = encode_move(b"\x01\x02", F(0), F(1))
        assert decode_history(move.value) == move.payload == b"\x01\x02"
