import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from totalsearch.encoding import (
    Bitstring,
    bit_compose,
    bit_decompose,
    bit_decompose_minimal,
    ceil_log2,
    mod_shift,
)


def test_bit_compose_examples():
    assert bit_compose("101") == 5
    assert bit_compose("0000") == 0
    assert bit_compose("0011") == 3


def test_bit_decompose_examples():
    assert str(bit_decompose(5, 4)) == "0101"
    assert str(bit_decompose(0, 3)) == "000"
    assert str(bit_decompose(6, 3)) == "110"


def test_bit_decompose_range_error():
    with pytest.raises(ValueError):
        bit_decompose(8, 3)
    with pytest.raises(ValueError):
        bit_decompose(-1, 3)


def test_minimal_decomposition():
    assert str(bit_decompose_minimal(5)) == "101"
    assert str(bit_decompose_minimal(12)) == "1100"
    # zero keeps a single bit so one squaring round survives
    assert str(bit_decompose_minimal(0)) == "0"


def test_minimal_length_law():
    for a in range(1, 2000):
        s = str(bit_decompose_minimal(a))
        assert s[0] == "1"
        assert len(s) == a.bit_length()


def test_roundtrip_exhaustive_small():
    for k in range(1, 11):
        for a in range(1 << k):
            assert bit_compose(bit_decompose(a, k)) == a
        for a in range(1 << k):
            x = bit_decompose(a, k)
            assert bit_decompose(bit_compose(x), k) == x


@given(st.integers(1, 16), st.data())
@settings(max_examples=200)
def test_roundtrip_random(k, data):
    a = data.draw(st.integers(0, (1 << k) - 1))
    assert bit_compose(bit_decompose(a, k)) == a


def test_mod_shift_examples():
    assert str(mod_shift("0101", "0100", "+")) == "1001"
    assert str(mod_shift("1101", "0100", "+")) == "0001"
    assert str(mod_shift("0001", "0100", "-")) == "1101"


def test_mod_shift_width_mismatch():
    with pytest.raises(ValueError):
        mod_shift("01", "011", "+")


@given(st.integers(1, 12), st.data())
@settings(max_examples=200)
def test_mod_shift_inverse(k, data):
    u = data.draw(st.integers(0, (1 << k) - 1))
    w = data.draw(st.integers(0, (1 << k) - 1))
    ub, wb = bit_decompose(u, k), bit_decompose(w, k)
    assert mod_shift(mod_shift(ub, wb, "+"), wb, "-") == ub


def test_bitstring_values():
    b = Bitstring("0110")
    assert len(b) == 4 and b.value == 6
    assert b[0] == 0 and b[1] == 1
    assert b.bits == (0, 1, 1, 0)
    assert b == Bitstring((0, 1, 1, 0))
    assert str(b[1:3]) == "11"
    assert str(b ^ Bitstring("0001")) == "0111"
    assert str(Bitstring("01") + Bitstring("10")) == "0110"


def test_bitstring_immutable_and_validated():
    b = Bitstring("01")
    with pytest.raises(AttributeError):
        b.value = 3
    with pytest.raises(ValueError):
        Bitstring("01a")
    with pytest.raises(ValueError):
        Bitstring("")
    with pytest.raises(ValueError):
        Bitstring([0, 2])


def test_ceil_log2():
    assert [ceil_log2(s) for s in (1, 2, 3, 4, 5, 16, 17)] == [0, 1, 2, 2, 3, 4, 5]
