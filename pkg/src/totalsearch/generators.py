"""Seeded random instance generation.

The algorithms below are part of the tool's reproducibility contract:
with the same seed they emit the same instances on any platform. Gates
are drawn uniformly from AND/OR/XOR/NOT with uniformly random feeds
from earlier wires; outputs are drawn uniformly from all wires.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .circuit import Circuit, Gate
from .encoding import ceil_log2
from .lattice import IntMatrix
from .problems import (
    BlichfeldtInstance,
    ClawInstance,
    CollisionInstance,
    DLogInstance,
    DLogPInstance,
    DoveInstance,
    GeneralClawInstance,
    GroupoidRep,
    IndexInstance,
    Instance,
    PigeonInstance,
    PrefixCollisionInstance,
    factorize,
)

PROBLEMS = (
    "pigeon",
    "collision",
    "prefix_collision",
    "dove",
    "claw",
    "general_claw",
    "dlog",
    "index",
    "dlogp",
    "blichfeldt",
)

_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


def random_circuit(
    rng: random.Random,
    num_inputs: int,
    num_outputs: int,
    num_gates: Optional[int] = None,
) -> Circuit:
    if num_gates is None:
        num_gates = rng.randint(num_inputs + 1, 3 * num_inputs + 5)
    gates = []
    total = num_inputs
    for _ in range(num_gates):
        op = rng.choice(("AND", "OR", "XOR", "NOT"))
        arity = 1 if op == "NOT" else 2
        args = tuple(rng.randrange(total) for _ in range(arity))
        gates.append(Gate(total, op, args))
        total += 1
    outputs = tuple(rng.randrange(total) for _ in range(num_outputs))
    return Circuit(num_inputs, tuple(gates), outputs)


def generators_mod(p: int) -> List[int]:
    qs = [q for q, _ in factorize(p - 1)]
    return [
        g for g in range(1, p) if all(pow(g, (p - 1) // q, p) != 1 for q in qs)
    ]


def random_instance(
    problem: str, n: int, rng: random.Random, num_gates: Optional[int] = None
) -> Instance:
    """One structurally valid instance; n is the bit-size parameter."""
    if problem == "pigeon":
        return PigeonInstance(random_circuit(rng, n, n, num_gates))
    if problem == "collision":
        n = max(n, 2)
        m = rng.randint(1, n - 1)
        return CollisionInstance(random_circuit(rng, n, m, num_gates))
    if problem == "prefix_collision":
        n = max(n, 2)
        return PrefixCollisionInstance(random_circuit(rng, n, n, num_gates))
    if problem == "dove":
        return DoveInstance(random_circuit(rng, n, n, num_gates))
    if problem == "claw":
        return ClawInstance(
            random_circuit(rng, n, n, num_gates), random_circuit(rng, n, n, num_gates)
        )
    if problem == "general_claw":
        s = rng.randint(1, (1 << n) - 1) if n > 1 else 1
        return GeneralClawInstance(
            random_circuit(rng, n, n, num_gates),
            random_circuit(rng, n, n, num_gates),
            s,
        )
    if problem in ("dlog", "index"):
        l = n
        s = 2 if l == 1 else rng.randint((1 << (l - 1)) + 1, 1 << l)
        assert ceil_log2(s) == l
        f = random_circuit(rng, 2 * l, l, num_gates)
        rep = GroupoidRep(
            s, f, rng.randrange(s), rng.randrange(s), rng.randrange(s)
        )
        return DLogInstance(rep) if problem == "dlog" else IndexInstance(rep)
    if problem == "dlogp":
        pool = [p for p in _SMALL_PRIMES if p <= max(5, 1 << n)] or [5]
        p = rng.choice(pool)
        g = rng.choice(generators_mod(p))
        y = rng.randrange(1, p)
        return DLogPInstance(p, tuple(factorize(p - 1)), g, y)
    if problem == "blichfeldt":
        dim = max(2, min(n, 4))
        rows = []
        for i in range(dim):
            row = [0] * dim
            for j in range(i):
                row[j] = rng.randint(-2, 2)
            row[i] = rng.choice((1, 2, 3)) * rng.choice((1, -1))
            rows.append(row)
        basis = IntMatrix.from_rows(rows)
        det = 1
        for i in range(dim):
            det *= rows[i][i]
        s = max(2, abs(det) + rng.randint(0, 3))
        k = ceil_log2(s)
        m = rng.randint(1, 2)
        return BlichfeldtInstance(basis, s, random_circuit(rng, k, dim * m), m)
    raise ValueError(f"unknown problem {problem!r}")


def instance_corpus(problem: str, n: int, count: int, seed: int) -> List[Instance]:
    """Deterministic corpus; instance i uses Random(f"{seed}:{problem}:{i}")."""
    out = []
    for i in range(count):
        rng = random.Random(f"{seed}:{problem}:{i}")
        size = rng.randint(1, n) if problem not in ("collision", "prefix_collision") else rng.randint(2, max(2, n))
        out.append(random_instance(problem, size, rng))
    return out
