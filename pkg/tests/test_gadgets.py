import random

import pytest

from totalsearch.circuit import Circuit, Gate, evaluate, truth_table
from totalsearch.encoding import Bitstring, ceil_log2
from totalsearch.gadgets import (
    CircuitBuilder,
    build_modmul,
    build_piecewise,
    build_square_multiply,
    circuit_from_table,
    drop_last_output,
    pad_outputs,
    wire_transform,
)
from totalsearch.generators import random_circuit
from totalsearch.problems import GroupoidOps
from totalsearch.generators import random_instance


def _vec_circuit(width, build):
    """Helper: build a circuit from a vector-level builder function."""
    b = CircuitBuilder(width)
    return b.build(build(b, b.inputs()))


def test_add_sub_const_exhaustive():
    for k in (1, 2, 4, 5):
        for c in (0, 1, 3, (1 << k) - 1):
            add = _vec_circuit(k, lambda b, ins: b.add_const(ins, c))
            sub = _vec_circuit(k, lambda b, ins: b.sub_const(ins, c))
            ta, ts = truth_table(add), truth_table(sub)
            for a in range(1 << k):
                assert ta[a] == (a + c) % (1 << k)
                assert ts[a] == (a - c) % (1 << k)


def test_add_vec_exhaustive():
    for k in (1, 2, 3, 4, 5):
        b = CircuitBuilder(2 * k)
        ins = b.inputs()
        c = b.build(b.add_vec(ins[:k], ins[k:]))
        t = truth_table(c)
        for x in range(1 << k):
            for y in range(1 << k):
                assert t[(x << k) | y] == (x + y) % (1 << k)


def test_geq_const_exhaustive():
    for k in (1, 3, 5):
        for c in range(0, (1 << k) + 2):
            g = _vec_circuit(k, lambda b, ins: [b.geq_const(ins, c)])
            t = truth_table(g)
            for a in range(1 << k):
                assert t[a] == int(a >= c), (k, c, a)


def test_eq_and_mux():
    b = CircuitBuilder(5)
    ins = b.inputs()
    sel, a, bb = ins[0], ins[1:3], ins[3:]
    c = b.build(b.mux(sel, a, bb) + [b.eq_vec(a, bb)])
    t = truth_table(c)
    for i in range(32):
        sel_v, av, bv = (i >> 4) & 1, (i >> 2) & 3, i & 3
        want = (av if sel_v else bv) << 1 | int(av == bv)
        assert t[i] == want


def test_pad_outputs():
    c = circuit_from_table(2, [1, 1, 1, 1], 1)  # constant 2->1
    padded = pad_outputs(c, 2)
    assert padded.num_outputs == 2
    assert str(evaluate(padded, "11")) == "10"
    assert pad_outputs(c, 1) is c
    with pytest.raises(ValueError):
        pad_outputs(c, 0)


def test_drop_last_output():
    rng = random.Random(0)
    c = random_circuit(rng, 3, 3)
    d = drop_last_output(c)
    assert d.num_outputs == 2
    for i in range(8):
        x = Bitstring.from_int(i, 3)
        assert evaluate(d, x).value == evaluate(c, x).value >> 1


def test_wire_transform_rearranges():
    c = Circuit(2, (Gate(2, "XOR", (0, 1)),), (2,))
    # swap inputs, passthrough input 0, add constants around the output
    t = wire_transform(c, [1, 0], [("const", 1), ("out", 0), ("in", 0), ("const", 0)])
    assert t.num_inputs == 2 and t.num_outputs == 4
    for i in range(4):
        x = Bitstring.from_int(i, 2)
        want = (1, evaluate(c, Bitstring((x[1], x[0])))[0], x[0], 0)
        assert evaluate(t, x).bits == want


def test_wire_transform_dangling():
    c = Circuit(2, (Gate(2, "XOR", (0, 1)),), (2,))
    with pytest.raises(ValueError):
        wire_transform(c, [0, 5], [("out", 0)], num_inputs=2)
    with pytest.raises(ValueError):
        wire_transform(c, [0, 1], [("out", 3)], num_inputs=2)


def test_wire_transform_composes():
    # two successive transforms equal the fused transform on all inputs
    rng = random.Random(21)
    for _ in range(15):
        n = rng.randint(2, 4)
        c = random_circuit(rng, n, rng.randint(1, 3))
        k1 = rng.randint(2, 4)
        im1 = [rng.randrange(k1) for _ in range(n)]
        om1 = []
        for _ in range(rng.randint(1, 4)):
            kind = rng.choice(("out", "in", "const"))
            if kind == "out":
                om1.append(("out", rng.randrange(c.num_outputs)))
            elif kind == "in":
                om1.append(("in", rng.randrange(k1)))
            else:
                om1.append(("const", rng.randint(0, 1)))
        t1 = wire_transform(c, im1, om1, num_inputs=k1)
        k2 = rng.randint(2, 4)
        im2 = [rng.randrange(k2) for _ in range(t1.num_inputs)]
        om2 = [("out", rng.randrange(t1.num_outputs)) for _ in range(2)]
        t2 = wire_transform(t1, im2, om2, num_inputs=k2)
        fused_im = [im2[im1[i]] for i in range(n)]
        fused_om = []
        for kind, idx in om2:
            inner = om1[idx]
            if inner[0] == "in":
                fused_om.append(("in", im2[inner[1]]))
            else:
                fused_om.append(inner)
        fused = wire_transform(c, fused_im, fused_om, num_inputs=k2)
        assert truth_table(t2) == truth_table(fused)


def _dove_rule_interpreter(ctab, n):
    # direct interpreter of the three-case operation used as an oracle
    def f(x, y):
        if x == y:
            return ctab[x]
        if x == 0:
            return ctab[y ^ 1]
        return x ^ y

    return f


def test_build_piecewise_matches_interpreter():
    # three-case rule: diagonal applies C, generator row applies C after a
    # last-bit flip, everything else xors
    rng = random.Random(4)
    n = 3
    for _ in range(10):
        c = random_circuit(rng, n, n)
        ctab = truth_table(c)

        def fresh():
            b = CircuitBuilder(2 * n)
            ins = b.inputs()
            return b, ins[:n], ins[n:]

        b, x, y = fresh()
        p1 = b.build([b.eq_vec(x, y)])
        b, x, y = fresh()
        b1 = b.build(b.inline(c, x))
        b, x, y = fresh()
        p2 = b.build([b.and_(b.eq_const(x, 0), b.not_(b.eq_const(y, 0)))])
        b, x, y = fresh()
        b2 = b.build(b.inline(c, y[: n - 1] + [b.not_(y[n - 1])]))
        b, x, y = fresh()
        default = b.build([b.xor(a, bb) for a, bb in zip(x, y)])
        f = build_piecewise([(p1, b1), (p2, b2)], default)
        ftab = truth_table(f)
        oracle = _dove_rule_interpreter(ctab, n)
        for x_v in range(1 << n):
            for y_v in range(1 << n):
                assert ftab[(x_v << n) | y_v] == oracle(x_v, y_v)


def test_build_piecewise_empty_cases():
    rng = random.Random(9)
    d = random_circuit(rng, 3, 2)
    assert build_piecewise([], d) is d


def test_build_piecewise_first_match_wins():
    # both predicates true on every input: the first body is selected
    b = CircuitBuilder(2)
    true1 = b.build([b.const(1)])
    b = CircuitBuilder(2)
    body_a = b.build([b.const(1), b.const(0)])
    b = CircuitBuilder(2)
    true2 = b.build([b.const(1)])
    b = CircuitBuilder(2)
    body_b = b.build([b.const(0), b.const(1)])
    b = CircuitBuilder(2)
    default = b.build([b.const(0), b.const(0)])
    c = build_piecewise([(true1, body_a), (true2, body_b)], default)
    assert all(v == 2 for v in truth_table(c))


def test_build_piecewise_width_checks():
    b = CircuitBuilder(2)
    pred = b.build([b.const(1)])
    b = CircuitBuilder(3)
    body = b.build([b.const(0)])
    b = CircuitBuilder(2)
    default = b.build([b.const(0)])
    with pytest.raises(ValueError):
        build_piecewise([(pred, body)], default)


def test_modmul_examples():
    c7 = build_modmul(7)
    assert evaluate(c7, Bitstring.from_int(2, 3) + Bitstring.from_int(4, 3)).value == 0
    for b in range(6):
        got = evaluate(c7, Bitstring.from_int(0, 3) + Bitstring.from_int(b, 3)).value
        assert got == b
    c5 = build_modmul(5)
    assert evaluate(c5, Bitstring.from_int(1, 2) + Bitstring.from_int(1, 2)).value == 3


def test_modmul_exhaustive():
    for p in (3, 5, 7, 11, 13):
        c = build_modmul(p)
        l = c.num_outputs
        assert l == ceil_log2(p - 1)
        tab = truth_table(c)
        for a in range(p - 1):
            for b in range(p - 1):
                assert tab[(a << l) | b] == ((a + 1) * (b + 1)) % p - 1


def test_modmul_rejects_nonprime():
    with pytest.raises(ValueError):
        build_modmul(9)
    with pytest.raises(ValueError):
        build_modmul(2)


def test_modmul_size_quadratic():
    for p in (3, 5, 7, 11, 13, 17, 19, 31, 61):
        l = ceil_log2(p - 1)
        assert build_modmul(p).num_gates <= 60 * (l + 2) ** 2


def test_modmul_twelve_input_bits():
    # widest gadget checked against arithmetic over its whole domain
    p = 61
    c = build_modmul(p)
    l = c.num_outputs
    assert 2 * l == 12
    tab = truth_table(c)
    for a in range(p - 1):
        for b in range(p - 1):
            assert tab[(a << l) | b] == ((a + 1) * (b + 1)) % p - 1


def test_square_multiply_matches_algorithm():
    rng = random.Random(17)
    for _ in range(25):
        l = rng.randint(1, 4)
        rep = random_instance("dlog", l, rng).rep
        circuit = build_square_multiply(rep.f, rep.s, rep.identity, rep.generator)
        tab = truth_table(circuit)
        ops = GroupoidOps(rep)
        for x in range(rep.s):
            assert tab[x] == ops.index_value(x)


def test_circuit_from_table_roundtrip():
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(1, 4)
        m = rng.randint(1, 3)
        values = [rng.randrange(1 << m) for _ in range(1 << n)]
        assert truth_table(circuit_from_table(n, values, m)) == values
