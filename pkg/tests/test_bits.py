import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolab.bits import decode_nat, encode_nat, from_hex, parse_bits, to_hex

bitstrings = st.text(alphabet="01", max_size=64)


@pytest.mark.parametrize("v, expected", [(0, ""), (6, "110"), (17, "10001")])
def test_encode_nat_examples(v, expected):
    assert encode_nat(v) == expected


def test_encode_nat_rejects_negative():
    with pytest.raises(ValueError):
        encode_nat(-1)


@given(st.integers(min_value=0, max_value=2**20 - 1))
def test_encode_nat_round_trip(v):
    s = encode_nat(v)
    assert decode_nat(s) == v
    assert not s.startswith("0")


@pytest.mark.parametrize("bits, text", [("1011", "b:4"), ("", ":0"), ("00000001", "01:8")])
def test_hex_examples(bits, text):
    assert to_hex(bits) == text
    digits, length = text.split(":")
    assert from_hex(digits, int(length)) == bits


def test_hex_round_trip_exhaustive_small():
    for length in range(11):
        for i in range(1 << length):
            x = format(i, f"0{length}b") if length else ""
            assert from_hex(*_split(to_hex(x))) == x


@given(bitstrings)
def test_hex_round_trip_random(x):
    assert parse_bits(to_hex(x)) == x


def _split(text):
    digits, length = text.split(":")
    return digits, int(length)


@pytest.mark.parametrize("digits, length", [("g", 4), ("b", 5), ("0b", 4), ("", 1), ("f", 3)])
def test_from_hex_errors(digits, length):
    with pytest.raises(ValueError):
        from_hex(digits, length)


def test_parse_bits_accepts_both_forms():
    assert parse_bits("0101") == "0101"
    assert parse_bits("5:4") == "0101"
    with pytest.raises(ValueError):
        parse_bits("012")
