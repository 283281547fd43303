"""Gate-level Boolean circuit IR: evaluation, truth tables, serialization.

A circuit is a list of gates in topological order over the ops
AND, OR, XOR, NOT, CONST0, CONST1. Wires 0..num_inputs-1 are the inputs
(most significant input bit on wire 0); gate ids continue densely from
num_inputs. Outputs are an ordered list of wire ids, most significant
output bit first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from .encoding import Bitstring

OP_ARITY = {
    "AND": 2,
    "OR": 2,
    "XOR": 2,
    "NOT": 1,
    "CONST0": 0,
    "CONST1": 0,
}


class CircuitParseError(ValueError):
    """Raised on malformed circuit documents, with the offending location."""


@dataclass(frozen=True)
class Gate:
    id: int
    op: str
    args: Tuple[int, ...]


@dataclass(frozen=True)
class Circuit:
    num_inputs: int
    gates: Tuple[Gate, ...]
    outputs: Tuple[int, ...]

    def __post_init__(self):
        if self.num_inputs < 1:
            raise ValueError("circuit needs at least one input")
        for pos, gate in enumerate(self.gates):
            if gate.id != self.num_inputs + pos:
                raise ValueError(
                    f"gate ids must be dense and in order: gate {pos} has id {gate.id}"
                )
            arity = OP_ARITY.get(gate.op)
            if arity is None:
                raise ValueError(f"unknown op {gate.op!r} at gate {gate.id}")
            if len(gate.args) != arity:
                raise ValueError(f"op {gate.op} takes {arity} args at gate {gate.id}")
            for a in gate.args:
                if not 0 <= a < gate.id:
                    raise ValueError(f"gate {gate.id} references undefined wire {a}")
        if not self.outputs:
            raise ValueError("circuit needs at least one output")
        top = self.num_inputs + len(self.gates)
        for o in self.outputs:
            if not 0 <= o < top:
                raise ValueError(f"output references undefined wire {o}")

    @property
    def num_outputs(self) -> int:
        return len(self.outputs)

    @property
    def num_gates(self) -> int:
        return len(self.gates)


def evaluate(circuit: Circuit, inp: Union[Bitstring, str]) -> Bitstring:
    """Single forward pass in gate order."""
    bits = Bitstring(inp)
    if bits.width != circuit.num_inputs:
        raise ValueError(
            f"input width {bits.width} != circuit inputs {circuit.num_inputs}"
        )
    wires: List[int] = list(bits.bits)
    for gate in circuit.gates:
        op, args = gate.op, gate.args
        if op == "AND":
            v = wires[args[0]] & wires[args[1]]
        elif op == "OR":
            v = wires[args[0]] | wires[args[1]]
        elif op == "XOR":
            v = wires[args[0]] ^ wires[args[1]]
        elif op == "NOT":
            v = 1 - wires[args[0]]
        elif op == "CONST0":
            v = 0
        else:
            v = 1
        wires.append(v)
    return Bitstring(tuple(wires[o] for o in circuit.outputs))


def _input_columns(k: int) -> List[int]:
    # Column j holds, in bit position i, the value of input wire j on the
    # input with index i (index i decomposed most significant bit first).
    size = 1 << k
    ones = (1 << size) - 1
    cols = []
    for wire in range(k):
        w = 1 << (k - 1 - wire)  # weight of this input bit
        block = ((1 << w) - 1) << w
        period = 2 * w
        col = block * (ones // ((1 << period) - 1))
        cols.append(col)
    return cols


def truth_table(circuit: Circuit) -> List[int]:
    """Output values over all inputs, computed one bit-parallel pass.

    Entry i is the composed output value on the input whose composed
    value is i. Intended for exhaustive work on small circuits; the
    cost is one big-integer op per gate plus the final unpacking.
    """
    k = circuit.num_inputs
    size = 1 << k
    mask = (1 << size) - 1
    cols = _input_columns(k)
    for gate in circuit.gates:
        op, args = gate.op, gate.args
        if op == "AND":
            v = cols[args[0]] & cols[args[1]]
        elif op == "OR":
            v = cols[args[0]] | cols[args[1]]
        elif op == "XOR":
            v = cols[args[0]] ^ cols[args[1]]
        elif op == "NOT":
            v = mask ^ cols[args[0]]
        elif op == "CONST0":
            v = 0
        else:
            v = mask
        cols.append(v)
    out_cols = [cols[o] for o in circuit.outputs]
    m = len(out_cols)
    table = [0] * size
    for pos, col in enumerate(out_cols):
        weight = 1 << (m - 1 - pos)
        for i in range(size):
            if (col >> i) & 1:
                table[i] += weight
    return table


def circuit_to_dict(circuit: Circuit) -> dict:
    return {
        "inputs": circuit.num_inputs,
        "gates": [
            {"id": g.id, "op": g.op, "args": list(g.args)} for g in circuit.gates
        ],
        "outputs": list(circuit.outputs),
    }


def circuit_from_dict(doc: dict) -> Circuit:
    if not isinstance(doc, dict):
        raise CircuitParseError("circuit document must be an object")
    for key in ("inputs", "gates", "outputs"):
        if key not in doc:
            raise CircuitParseError(f"circuit document missing field {key!r}")
    n = doc["inputs"]
    if not isinstance(n, int) or n < 1:
        raise CircuitParseError(f"invalid input count: {n!r}")
    gates = []
    for pos, g in enumerate(doc["gates"]):
        where = f"gates[{pos}]"
        if not isinstance(g, dict) or not {"id", "op", "args"} <= set(g):
            raise CircuitParseError(f"{where}: expected an object with id/op/args")
        gid, op, args = g["id"], g["op"], g["args"]
        if not isinstance(gid, int) or not isinstance(op, str):
            raise CircuitParseError(f"{where}: malformed id or op")
        if op not in OP_ARITY:
            raise CircuitParseError(f"{where}: unknown op {op!r}")
        if not isinstance(args, list) or not all(isinstance(a, int) for a in args):
            raise CircuitParseError(f"{where}: args must be a list of wire ids")
        if gid != n + pos:
            raise CircuitParseError(
                f"{where}: gate id {gid} out of order (expected {n + pos})"
            )
        if len(args) != OP_ARITY[op]:
            raise CircuitParseError(f"{where}: op {op} takes {OP_ARITY[op]} args")
        for a in args:
            if not 0 <= a < gid:
                raise CircuitParseError(
                    f"{where}: wire {a} is not defined before gate {gid}"
                )
        gates.append(Gate(gid, op, tuple(args)))
    outputs = doc["outputs"]
    if not isinstance(outputs, list) or not outputs:
        raise CircuitParseError("outputs must be a nonempty list")
    top = n + len(gates)
    for pos, o in enumerate(outputs):
        if not isinstance(o, int) or not 0 <= o < top:
            raise CircuitParseError(f"outputs[{pos}]: undefined wire {o!r}")
    return Circuit(n, tuple(gates), tuple(outputs))


def serialize(circuit: Circuit) -> str:
    """Canonical byte-stable text form (fixed field order, no whitespace)."""
    return json.dumps(circuit_to_dict(circuit), separators=(",", ":"))


def parse(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitParseError(f"invalid JSON at char {e.pos}: {e.msg}") from None
    return circuit_from_dict(doc)
