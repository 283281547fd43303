"""Circuit synthesis: structural combinators and arithmetic gadgets.

Wire vectors are lists of wire ids, most significant bit first, matching
the bitstring convention in `encoding`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .circuit import Circuit, Gate, evaluate
from .encoding import Bitstring, ceil_log2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class CircuitBuilder:
    """Accumulates gates in topological order; wires are plain ints."""

    def __init__(self, num_inputs: int):
        self.num_inputs = num_inputs
        self.gates: List[Gate] = []
        self._next = num_inputs
        self._consts = {}

    def inputs(self) -> List[int]:
        return list(range(self.num_inputs))

    def emit(self, op: str, *args: int) -> int:
        wire = self._next
        self.gates.append(Gate(wire, op, tuple(args)))
        self._next += 1
        return wire

    def const(self, b: int) -> int:
        if b not in self._consts:
            self._consts[b] = self.emit("CONST1" if b else "CONST0")
        return self._consts[b]

    def not_(self, a: int) -> int:
        return self.emit("NOT", a)

    def and_(self, a: int, b: int) -> int:
        return self.emit("AND", a, b)

    def or_(self, a: int, b: int) -> int:
        return self.emit("OR", a, b)

    def xor(self, a: int, b: int) -> int:
        return self.emit("XOR", a, b)

    def and_all(self, wires: Sequence[int]) -> int:
        acc = wires[0]
        for w in wires[1:]:
            acc = self.and_(acc, w)
        return acc

    def const_vec(self, value: int, width: int) -> List[int]:
        return [self.const((value >> (width - 1 - i)) & 1) for i in range(width)]

    def eq_vec(self, a: Sequence[int], b: Sequence[int]) -> int:
        assert len(a) == len(b)
        return self.and_all([self.not_(self.xor(x, y)) for x, y in zip(a, b)])

    def eq_const(self, a: Sequence[int], value: int) -> int:
        width = len(a)
        lits = [
            a[i] if (value >> (width - 1 - i)) & 1 else self.not_(a[i])
            for i in range(width)
        ]
        return self.and_all(lits)

    def mux(self, sel: int, when1: Sequence[int], when0: Sequence[int]) -> List[int]:
        assert len(when1) == len(when0)
        nsel = self.not_(sel)
        return [
            self.or_(self.and_(sel, x), self.and_(nsel, y))
            for x, y in zip(when1, when0)
        ]

    def add_vec(self, a: Sequence[int], b: Sequence[int], carry_in: int = 0) -> List[int]:
        """Ripple add mod 2^k."""
        assert len(a) == len(b)
        carry = self.const(carry_in) if carry_in in (0, 1) else carry_in
        out: List[int] = []
        for x, y in zip(reversed(a), reversed(b)):
            xy = self.xor(x, y)
            out.append(self.xor(xy, carry))
            carry = self.or_(self.and_(x, y), self.and_(carry, xy))
        out.reverse()
        return out

    def add_const(self, a: Sequence[int], value: int) -> List[int]:
        k = len(a)
        return self.add_vec(a, self.const_vec(value % (1 << k), k))

    def sub_const(self, a: Sequence[int], value: int) -> List[int]:
        k = len(a)
        return self.add_const(a, (-value) % (1 << k))

    def geq_const(self, a: Sequence[int], value: int) -> int:
        """Wire holding [composed a >= value]."""
        k = len(a)
        if value <= 0:
            return self.const(1)
        if value > (1 << k) - 1:
            return self.const(0)
        lt = self.const(0)
        eq = self.const(1)
        for i in range(k):
            bit = (value >> (k - 1 - i)) & 1
            if bit:
                lt = self.or_(lt, self.and_(eq, self.not_(a[i])))
                eq = self.and_(eq, a[i])
            else:
                eq = self.and_(eq, self.not_(a[i]))
        return self.not_(lt)

    def widen(self, a: Sequence[int], width: int) -> List[int]:
        assert width >= len(a)
        return [self.const(0)] * (width - len(a)) + list(a)

    def inline(self, sub: Circuit, input_wires: Sequence[int]) -> List[int]:
        """Splice a subcircuit in, feeding its inputs from existing wires."""
        assert len(input_wires) == sub.num_inputs
        remap = dict(enumerate(input_wires))
        for gate in sub.gates:
            remap[gate.id] = self.emit(gate.op, *(remap[a] for a in gate.args))
        return [remap[o] for o in sub.outputs]

    def build(self, outputs: Sequence[int]) -> Circuit:
        return Circuit(self.num_inputs, tuple(self.gates), tuple(outputs))


OutSpec = Tuple[str, int]  # ("out", j) | ("in", i) | ("const", b)


def wire_transform(
    circuit: Circuit,
    input_map: Sequence[int],
    output_map: Sequence[OutSpec],
    num_inputs: Optional[int] = None,
) -> Circuit:
    """Rewire one application of a circuit.

    input_map[i] names the new input feeding old input i; output_map
    entries pick from the old outputs ("out", j), constants ("const", b)
    or pass a new input through ("in", i). The result computes exactly
    the requested rearrangement of circuit(projected input).
    """
    if num_inputs is None:
        referenced = list(input_map) + [s[1] for s in output_map if s[0] == "in"]
        num_inputs = max(referenced) + 1
    for i in input_map:
        if not 0 <= i < num_inputs:
            raise ValueError(f"input_map references missing new input {i}")
    b = CircuitBuilder(num_inputs)
    outs = b.inline(circuit, [input_map[i] for i in range(circuit.num_inputs)])
    result = []
    for spec in output_map:
        kind, idx = spec
        if kind == "out":
            if not 0 <= idx < circuit.num_outputs:
                raise ValueError(f"output_map references missing output {idx}")
            result.append(outs[idx])
        elif kind == "in":
            if not 0 <= idx < num_inputs:
                raise ValueError(f"output_map references missing new input {idx}")
            result.append(idx)
        elif kind == "const":
            result.append(b.const(idx))
        else:
            raise ValueError(f"unknown output spec {spec!r}")
    return b.build(result)


def pad_outputs(circuit: Circuit, target_width: int) -> Circuit:
    """Append constant-zero output bits up to target_width."""
    m = circuit.num_outputs
    if target_width < m:
        raise ValueError("cannot pad to a smaller width")
    if target_width == m:
        return circuit
    omap = [("out", j) for j in range(m)] + [("const", 0)] * (target_width - m)
    return wire_transform(
        circuit, list(range(circuit.num_inputs)), omap, circuit.num_inputs
    )


def drop_last_output(circuit: Circuit) -> Circuit:
    if circuit.num_outputs < 2:
        raise ValueError("need at least two outputs to drop one")
    omap = [("out", j) for j in range(circuit.num_outputs - 1)]
    return wire_transform(
        circuit, list(range(circuit.num_inputs)), omap, circuit.num_inputs
    )


def build_piecewise(
    cases: Sequence[Tuple[Circuit, Circuit]], default: Circuit
) -> Circuit:
    """First-match case selection over a shared input space.

    Each case is (predicate, body); predicates are 1-output circuits and
    all bodies share the default's output width. The output is the body
    of the first case whose predicate holds, in the listed order.
    """
    if not cases:
        return default
    width = default.num_inputs
    m = default.num_outputs
    for pred, body in cases:
        if pred.num_inputs != width or body.num_inputs != width:
            raise ValueError("case circuits must share the default's input width")
        if pred.num_outputs != 1:
            raise ValueError("predicates must have exactly one output")
        if body.num_outputs != m:
            raise ValueError("bodies must share the default's output width")
    b = CircuitBuilder(width)
    ins = b.inputs()
    result = b.inline(default, ins)
    for pred, body in reversed(cases):
        [p] = b.inline(pred, ins)
        result = b.mux(p, b.inline(body, ins), result)
    return b.build(result)


@lru_cache(maxsize=None)
def build_modmul(p: int) -> Circuit:
    """Multiplication table of the units mod p under the shift e -> e-1.

    The circuit has 2l inputs and l outputs with l = ceil(log2(p-1));
    inputs a, b < p-1 encode the units a+1 and b+1, and the output
    encodes (a+1)(b+1) mod p minus one. Shift-and-add with a conditional
    subtraction of p after every doubling and addition keeps the
    intermediate values below p in l+2 bits. Out-of-range inputs produce
    deterministic garbage.
    """
    if not is_prime(p) or p < 3:
        raise ValueError(f"p must be a prime >= 3, got {p}")
    l = ceil_log2(p - 1)
    width = l + 2
    b = CircuitBuilder(2 * l)
    ins = b.inputs()
    a_unit = b.add_const(b.widen(ins[:l], width), 1)
    b_unit = b.add_const(b.widen(ins[l:], width), 1)

    def reduce_once(v):
        return b.mux(b.geq_const(v, p), b.sub_const(v, p), v)

    acc = b.const_vec(0, width)
    for i in range(width):
        acc = reduce_once(b.add_vec(acc, acc))
        added = reduce_once(b.add_vec(acc, a_unit))
        acc = b.mux(b_unit[i], added, acc)
    result = b.sub_const(acc, 1)
    return b.build(result[width - l :])


def circuit_from_table(
    num_inputs: int, values: Sequence[int], num_outputs: int
) -> Circuit:
    """Synthesize the function i -> values[i] as a sum of minterms."""
    if len(values) != 1 << num_inputs:
        raise ValueError("need one value per input")
    b = CircuitBuilder(num_inputs)
    ins = b.inputs()
    minterms = {}

    def minterm(i: int) -> int:
        if i not in minterms:
            lits = [
                ins[j] if (i >> (num_inputs - 1 - j)) & 1 else b.not_(ins[j])
                for j in range(num_inputs)
            ]
            minterms[i] = b.and_all(lits)
        return minterms[i]

    outs = []
    for pos in range(num_outputs):
        weight = 1 << (num_outputs - 1 - pos)
        hits = [i for i, v in enumerate(values) if v & weight]
        if not hits:
            outs.append(b.const(0))
        else:
            acc = minterm(hits[0])
            for i in hits[1:]:
                acc = b.or_(acc, minterm(i))
            outs.append(acc)
    return b.build(outs)


def build_square_multiply(
    f: Circuit, s: int, identity: int, generator: int
) -> Circuit:
    """Unrolled repeated squaring through a groupoid operation circuit.

    Produces an l-input, l-output circuit (l = ceil(log2 s)) computing,
    for bc(x) in [s], the bc(x)-th power of the generator: scan the bits
    of x from the first 1 on, squaring each round and multiplying by the
    generator on 1 bits; input 0 performs the single squaring of the
    identity. f must have 2l inputs and l outputs.
    """
    l = ceil_log2(s)
    if f.num_inputs != 2 * l or f.num_outputs != l:
        raise ValueError("operation circuit has the wrong arity")
    b = CircuitBuilder(l)
    x = b.inputs()
    g_vec = b.const_vec(generator, l)
    r = b.const_vec(identity, l)
    started = b.const(0)
    for i in range(l):
        bit = x[i]
        squared = b.inline(f, r + r)
        multiplied = b.inline(f, g_vec + squared)
        stepped = b.mux(bit, multiplied, squared)
        active = b.or_(started, bit)
        r = b.mux(active, stepped, r)
        started = active
    # Input 0 never trips `active` yet still squares the identity once.
    id_bits = Bitstring.from_int(identity, l)
    zero_case = evaluate(f, id_bits + id_bits)
    r = b.mux(b.eq_const(x, 0), b.const_vec(zero_case.value, l), r)
    return b.build(r)
