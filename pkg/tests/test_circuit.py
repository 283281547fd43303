import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from totalsearch.circuit import (
    Circuit,
    CircuitParseError,
    Gate,
    evaluate,
    parse,
    serialize,
    truth_table,
)
from totalsearch.encoding import Bitstring
from totalsearch.generators import random_circuit
import random


def xor2():
    return Circuit(2, (Gate(2, "XOR", (0, 1)),), (2,))


def test_evaluate_xor():
    c = xor2()
    assert str(evaluate(c, "10")) == "1"
    assert str(evaluate(c, "11")) == "0"


def test_evaluate_width_mismatch():
    with pytest.raises(ValueError):
        evaluate(xor2(), "101")


def test_structural_validation():
    with pytest.raises(ValueError):
        Circuit(2, (Gate(2, "XOR", (0, 3)),), (2,))  # forward reference
    with pytest.raises(ValueError):
        Circuit(2, (Gate(3, "XOR", (0, 1)),), (3,))  # sparse ids
    with pytest.raises(ValueError):
        Circuit(2, (Gate(2, "NAND", (0, 1)),), (2,))  # unknown op
    with pytest.raises(ValueError):
        Circuit(2, (Gate(2, "NOT", (0, 1)),), (2,))  # wrong arity
    with pytest.raises(ValueError):
        Circuit(2, (), ())  # no outputs
    with pytest.raises(ValueError):
        Circuit(2, (), (5,))  # dangling output


def test_serialize_roundtrip():
    c = xor2()
    assert parse(serialize(c)) == c
    rng = random.Random(3)
    for _ in range(20):
        c = random_circuit(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert parse(serialize(c)) == c


def test_serialize_byte_stable():
    rng = random.Random(5)
    c = random_circuit(rng, 3, 3)
    assert serialize(c) == serialize(parse(serialize(c)))


def test_parse_errors_carry_location():
    with pytest.raises(CircuitParseError, match="gates\\[0\\]"):
        parse('{"inputs":2,"gates":[{"id":2,"op":"XOR","args":[0,3]}],"outputs":[2]}')
    with pytest.raises(CircuitParseError, match="unknown op"):
        parse('{"inputs":2,"gates":[{"id":2,"op":"NAND","args":[0,1]}],"outputs":[2]}')
    with pytest.raises(CircuitParseError, match="invalid JSON"):
        parse("{nope")
    with pytest.raises(CircuitParseError, match="missing field"):
        parse('{"inputs":2,"gates":[]}')
    with pytest.raises(CircuitParseError, match="outputs"):
        parse('{"inputs":2,"gates":[],"outputs":[9]}')


@given(st.integers(0, 10_000))
@settings(max_examples=60)
def test_truth_table_matches_evaluate(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    c = random_circuit(rng, n, rng.randint(1, 4))
    table = truth_table(c)
    for i in range(1 << n):
        assert table[i] == evaluate(c, Bitstring.from_int(i, n)).value


def test_evaluate_deterministic():
    rng = random.Random(11)
    c = random_circuit(rng, 4, 4)
    a = evaluate(c, "0110")
    assert all(evaluate(c, "0110") == a for _ in range(5))
