"""Brute-force oracles: exhaustive, deterministic solution enumeration.

Solutions are generated case by case in ascending case number; inside a
case, witnesses run in ascending lexicographic order (ordered pairs:
first component outer). `brute_force` returns the first solution in
that order, so results are stable across runs and platforms.
"""

from __future__ import annotations

from typing import Iterator, List

from .circuit import truth_table
from .encoding import Bitstring
from .lattice import lattice_member
from .problems import (
    GroupoidOps,
    Instance,
    Solution,
    TotalityError,
    validate_instance,
)


def brute_force(inst: Instance, strict_index_distinct: bool = False) -> Solution:
    """First solution in canonical order; total on every valid instance."""
    for sol in enumerate_solutions(inst, strict_index_distinct=strict_index_distinct):
        return sol
    raise TotalityError(
        f"no solution found for a {inst.problem} instance; "
        "either the instance is invalid or this package has a bug"
    )


def enumerate_solutions(
    inst: Instance, strict_index_distinct: bool = False
) -> Iterator[Solution]:
    """All solutions of every case, in canonical deterministic order."""
    bad = validate_instance(inst)
    if bad:
        raise ValueError(f"invalid {inst.problem} instance: {'; '.join(bad)}")
    gen = _ENUMERATORS[inst.problem]
    return gen(inst, strict_index_distinct)


def _strings(width: int, values=None) -> List[Bitstring]:
    rng = range(1 << width) if values is None else values
    return [Bitstring.from_int(v, width) for v in rng]


def _enum_pigeon(inst, _strict):
    n = inst.circuit.num_inputs
    table = truth_table(inst.circuit)
    size = 1 << n
    for u in range(size):
        if table[u] == 0:
            yield Solution("pigeon", 1, (Bitstring.from_int(u, n),))
    for u in range(size):
        for v in range(size):
            if u != v and table[u] == table[v]:
                yield Solution(
                    "pigeon", 2, (Bitstring.from_int(u, n), Bitstring.from_int(v, n))
                )


def _enum_collision(inst, _strict):
    n = inst.circuit.num_inputs
    table = truth_table(inst.circuit)
    size = 1 << n
    for u in range(size):
        for v in range(size):
            if u != v and table[u] == table[v]:
                yield Solution(
                    "collision",
                    1,
                    (Bitstring.from_int(u, n), Bitstring.from_int(v, n)),
                )


def _enum_prefix_collision(inst, _strict):
    n = inst.circuit.num_inputs
    table = [v >> 1 for v in truth_table(inst.circuit)]
    size = 1 << n
    for u in range(size):
        for v in range(size):
            if u != v and table[u] == table[v]:
                yield Solution(
                    "prefix_collision",
                    1,
                    (Bitstring.from_int(u, n), Bitstring.from_int(v, n)),
                )


def _enum_dove(inst, _strict):
    n = inst.circuit.num_inputs
    table = truth_table(inst.circuit)
    size = 1 << n
    for want, case in ((0, 1), (1, 2)):
        for u in range(size):
            if table[u] == want:
                yield Solution("dove", case, (Bitstring.from_int(u, n),))
    for mask, case in ((0, 3), (1, 4)):
        for u in range(size):
            for v in range(size):
                if u != v and table[u] == table[v] ^ mask:
                    yield Solution(
                        "dove",
                        case,
                        (Bitstring.from_int(u, n), Bitstring.from_int(v, n)),
                    )


def _enum_claw(inst, _strict):
    n = inst.sigma0.num_inputs
    t0, t1 = truth_table(inst.sigma0), truth_table(inst.sigma1)
    size = 1 << n
    for u in range(size):
        for v in range(size):
            if t0[u] == t1[v]:
                yield Solution(
                    "claw", 1, (Bitstring.from_int(u, n), Bitstring.from_int(v, n))
                )
    for table, case in ((t0, 2), (t1, 3)):
        for u in range(size):
            for v in range(size):
                if u != v and table[u] == table[v]:
                    yield Solution(
                        "claw",
                        case,
                        (Bitstring.from_int(u, n), Bitstring.from_int(v, n)),
                    )


def _enum_general_claw(inst, _strict):
    n = inst.sigma0.num_inputs
    s = inst.s
    t0, t1 = truth_table(inst.sigma0), truth_table(inst.sigma1)
    size = 1 << n
    for u in range(min(s, size)):
        for v in range(min(s, size)):
            if t0[u] == t1[v]:
                yield Solution(
                    "general_claw",
                    1,
                    (Bitstring.from_int(u, n), Bitstring.from_int(v, n)),
                )
    for table, case in ((t0, 2), (t1, 3)):
        for u in range(size):
            for v in range(size):
                if u != v and table[u] == table[v]:
                    yield Solution(
                        "general_claw",
                        case,
                        (Bitstring.from_int(u, n), Bitstring.from_int(v, n)),
                    )
    for table, case in ((t0, 4), (t1, 5)):
        for u in range(min(s, size)):
            if table[u] >= s:
                yield Solution("general_claw", case, (Bitstring.from_int(u, n),))


def _groupoid_tables(rep):
    ops = GroupoidOps(rep)
    ops.ensure_table()
    index_of = [ops.index_value(x) for x in range(rep.s)]
    return ops, index_of


def _enum_dlog(inst, _strict):
    rep = inst.rep
    s, t = rep.s, rep.target
    ops, ig = _groupoid_tables(rep)
    for x in range(s):
        if ig[x] == t:
            yield Solution("dlog", 1, (x,))
    for x in range(s):
        for y in range(s):
            if ops.op(x, y) >= s:
                yield Solution("dlog", 2, (x, y))
    for x in range(s):
        for y in range(s):
            if x != y and ig[x] == ig[y]:
                yield Solution("dlog", 3, (x, y))
    shifted = [ops.op(t, ig[x]) for x in range(s)]
    for x in range(s):
        for y in range(s):
            if x != y and shifted[x] == shifted[y]:
                yield Solution("dlog", 4, (x, y))
    for x in range(s):
        for y in range(s):
            if ig[x] == shifted[y] and ig[(x - y) % s] != t:
                yield Solution("dlog", 5, (x, y))


def _enum_index(inst, strict):
    rep = inst.rep
    s, t = rep.s, rep.target
    ops, ig = _groupoid_tables(rep)
    for x in range(s):
        if ig[x] == t:
            yield Solution("index", 1, (x,))
    for x in range(s):
        for y in range(s):
            if strict and x == y:
                continue
            if ops.op(x, y) >= s:
                yield Solution("index", 2, (x, y))
    for x in range(s):
        for y in range(s):
            if x != y and ig[x] == ig[y]:
                yield Solution("index", 3, (x, y))


def _enum_dlogp(inst, _strict):
    acc = 1
    for x in range(inst.p - 1):
        if acc == inst.y:
            yield Solution("dlogp", 1, (x,))
        acc = (acc * inst.g) % inst.p


def _enum_blichfeldt(inst, _strict):
    k = inst.v.num_inputs
    table = truth_table(inst.v)
    size = 1 << k
    for u in range(size):
        for v in range(size):
            if u != v and table[u] == table[v]:
                yield Solution(
                    "blichfeldt",
                    1,
                    (Bitstring.from_int(u, k), Bitstring.from_int(v, k)),
                )
    vecs = [inst.decode_vector(table[i]) for i in range(inst.s)]
    for i in range(inst.s):
        if lattice_member(inst.basis, vecs[i]) is not None:
            yield Solution("blichfeldt", 2, (i,))
    for i in range(inst.s):
        for j in range(inst.s):
            if vecs[i] == vecs[j]:
                continue
            diff = tuple(a - b for a, b in zip(vecs[i], vecs[j]))
            if lattice_member(inst.basis, diff) is not None:
                yield Solution("blichfeldt", 3, (i, j))


_ENUMERATORS = {
    "pigeon": _enum_pigeon,
    "collision": _enum_collision,
    "prefix_collision": _enum_prefix_collision,
    "dove": _enum_dove,
    "claw": _enum_claw,
    "general_claw": _enum_general_claw,
    "dlog": _enum_dlog,
    "index": _enum_index,
    "dlogp": _enum_dlogp,
    "blichfeldt": _enum_blichfeldt,
}
