"""Constructive reductions between the search problems, with pull-backs.

Each reduction bundles an instance map with a solution pull-back: every
verified solution of the produced instance maps to a verified solution
of the original one. Cases that the construction provably rules out
raise SoundnessViolation instead of guessing, which turns those
impossibility arguments into executable assertions.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from .circuit import Circuit, evaluate, truth_table
from .encoding import Bitstring
from .gadgets import (
    CircuitBuilder,
    build_modmul,
    build_piecewise,
    build_square_multiply,
    drop_last_output,
    pad_outputs,
)
from .lattice import IntMatrix
from .problems import (
    BlichfeldtInstance,
    ClawInstance,
    CollisionInstance,
    DLogInstance,
    DLogPInstance,
    DoveInstance,
    GeneralClawInstance,
    GroupoidOps,
    GroupoidRep,
    IndexInstance,
    Instance,
    PigeonInstance,
    PrefixCollisionInstance,
    Solution,
    validate_instance,
)


class SoundnessViolation(RuntimeError):
    """A pull-back received a solution of a provably impossible case."""


class Reduction:
    """Instance map output plus the solution pull-back for one source."""

    def __init__(
        self,
        rid: str,
        source: Instance,
        target: Optional[Instance],
        pull: Optional[Callable[[Solution], Solution]] = None,
        shortcut: Optional[Solution] = None,
    ):
        self.rid = rid
        self.source = source
        self.target = target
        self._pull = pull
        self.shortcut = shortcut

    def pull_back(self, sol: Solution) -> Solution:
        if self.target is None:
            raise ValueError(f"{self.rid} produced no instance to pull back from")
        if sol.problem != self.target.problem:
            raise ValueError(
                f"solution for {sol.problem!r} cannot be pulled through {self.rid}"
            )
        return self._pull(sol)


def chain(first: Reduction, second: Reduction) -> Reduction:
    """Compose two reductions; the pull-back applies second's then first's."""
    if first.shortcut is not None:
        raise ValueError("cannot extend a reduction that already solved its source")
    if first.target is None or second.source != first.target:
        raise ValueError(
            f"cannot chain {first.rid} into {second.rid}: instances do not line up"
        )
    rid = f"{first.rid}+{second.rid}"
    if second.shortcut is not None:
        return Reduction(
            rid, first.source, None, shortcut=first.pull_back(second.shortcut)
        )
    return Reduction(
        rid,
        first.source,
        second.target,
        lambda sol: first.pull_back(second.pull_back(sol)),
    )


def _require_valid(inst: Instance) -> None:
    bad = validate_instance(inst)
    if bad:
        raise ValueError(f"invalid {inst.problem} instance: {'; '.join(bad)}")


# --------------------------------------------------------------------------
# Groupoid constructions with a prescribed indexing function


def build_shifted_indexing(l: int, shift: int, target: int = 0) -> GroupoidRep:
    """Groupoid on [2^l] whose indexing function is x -> x + shift mod 2^l.

    Doubling is a left shift and the generator action a successor, both
    conjugated by the shift. The identity element is the shift itself and
    the generator its parity flip: generator actions only ever see values
    of the shift's parity, so they can never hit the squaring case of the
    operation circuit.
    """
    s = 1 << l
    w = shift % s
    gen = w ^ 1

    def fresh():
        b = CircuitBuilder(2 * l)
        ins = b.inputs()
        return b, ins[:l], ins[l:]

    b, u, v = fresh()
    pred_sq = b.build([b.eq_vec(u, v)])
    b, u, v = fresh()
    d = b.sub_const(v, w)
    body_sq = b.build(b.add_const(d[1:] + [d[0]], w))
    b, u, v = fresh()
    pred_g = b.build([b.eq_const(u, gen)])
    b, u, v = fresh()
    d = b.sub_const(v, w)
    body_g = b.build(b.add_const(d[: l - 1] + [b.const(1)], w))
    b, u, v = fresh()
    default = b.build(v)
    f = build_piecewise([(pred_sq, body_sq), (pred_g, body_g)], default)
    return GroupoidRep(s, f, w, gen, target)


def build_identity_indexing(l: int, target: int = 0) -> GroupoidRep:
    """Groupoid on [2^l] whose indexing function is the identity map."""
    return build_shifted_indexing(l, 0, target)


# --------------------------------------------------------------------------
# collision -> dove


def red_collision_to_dove(inst: CollisionInstance) -> Reduction:
    """Run the shrinking circuit on both halves and pin two ones after it.

    The two constant output bits kill the zero-preimage cases and the
    last-bit-flip case outright, so every solution of the produced
    instance is a collision, and each collision restricts to a collision
    of the source circuit on one of the halves.
    """
    _require_valid(inst)
    c = inst.circuit
    n = c.num_inputs
    padded = pad_outputs(c, n - 1)
    b = CircuitBuilder(2 * n)
    ins = b.inputs()
    left = b.inline(padded, ins[:n])
    right = b.inline(padded, ins[n:])
    target = DoveInstance(b.build(left + right + [b.const(1), b.const(1)]))

    def pull(sol: Solution) -> Solution:
        if sol.case in (1, 2, 4):
            raise SoundnessViolation(
                f"collision_to_dove: case {sol.case} contradicts the constant "
                "one bits of the construction"
            )
        u, v = sol.witnesses
        if u[:n] != v[:n]:
            return Solution("collision", 1, (u[:n], v[:n]))
        return Solution("collision", 1, (u[n:], v[n:]))

    return Reduction("collision_to_dove", inst, target, pull)


# --------------------------------------------------------------------------
# dove -> dlog


def _dove_op_circuit(c: Circuit) -> Circuit:
    """2n -> n operation: C(x) on the diagonal, C(y xor 0..01) under the
    generator 0, plain xor elsewhere."""
    n = c.num_inputs

    def fresh():
        b = CircuitBuilder(2 * n)
        ins = b.inputs()
        return b, ins[:n], ins[n:]

    b, x, y = fresh()
    pred_diag = b.build([b.eq_vec(x, y)])
    b, x, y = fresh()
    body_diag = b.build(b.inline(c, x))
    b, x, y = fresh()
    pred_gen = b.build([b.and_(b.eq_const(x, 0), b.not_(b.eq_const(y, 0)))])
    b, x, y = fresh()
    body_gen = b.build(b.inline(c, y[: n - 1] + [b.not_(y[n - 1])]))
    b, x, y = fresh()
    default = b.build([b.xor(a, bb) for a, bb in zip(x, y)])
    return build_piecewise([(pred_diag, body_diag), (pred_gen, body_gen)], default)


def red_dove_to_dlog(inst: DoveInstance) -> Reduction:
    """Index through iterated applications of the source circuit.

    Size 2^n, generator 0, identity and target 1. Every step of the
    indexing computation outputs a value of C, so hitting the target
    yields a preimage of 0^(n-1)1, and index collisions replay the two
    computations against each other until they first meet, which pins a
    collision, a zero preimage, or a last-bit-flip pair of C.
    """
    _require_valid(inst)
    c = inst.circuit
    n = c.num_inputs
    rep = GroupoidRep(1 << n, _dove_op_circuit(c), 1, 0, 1)
    target = DLogInstance(rep)
    ops = GroupoidOps(rep)
    gen, ident, tgt = 0, 1, 1

    def bs(v: int) -> Bitstring:
        return Bitstring.from_int(v, n)

    def c_input(step) -> int:
        # Inverts the operation circuit's case split: C(c_input) == result.
        if step.left == step.right:
            return step.left
        assert step.left == gen
        return step.right ^ 1

    def last_c_input(x: int) -> int:
        return c_input(ops.index(x)[1].steps[-1])

    def screen(*traces) -> Optional[Solution]:
        # The collision analysis needs no intermediate value to equal the
        # generator; the first offending step hands over a zero preimage.
        for tr in traces:
            for step in tr.steps:
                if step.result == gen:
                    return Solution("dove", 1, (bs(c_input(step)),))
        return None

    def walk(steps_x, steps_y) -> Solution:
        # Two aligned runs with different current values that end equal
        # must first agree right after applying C to distinct inputs.
        assert len(steps_x) == len(steps_y)
        for sx, sy in zip(steps_x, steps_y):
            if sx.result == sy.result:
                a, b = c_input(sx), c_input(sy)
                assert a != b
                return Solution("dove", 3, (bs(a), bs(b)))
        raise AssertionError("aligned index computations never met")

    def steps_below(iters, m: int, j: int) -> List:
        # Flat steps of the iterations with bit position (from the low
        # end) strictly below j.
        flat = []
        for _, sq, mult in iters[m - j :]:
            flat.append(sq)
            if mult is not None:
                flat.append(mult)
        return flat

    def collision_pull(x: int, y: int) -> Solution:
        trx, tr_y = ops.index(x)[1], ops.index(y)[1]
        hit = screen(trx, tr_y)
        if hit is not None:
            return hit
        bx = list(reversed(trx.bits))
        by = list(reversed(tr_y.bits))
        ix, iy = trx.iterations(), tr_y.iterations()
        mx, my = len(bx), len(by)
        diff = [i for i in range(min(mx, my)) if bx[i] != by[i]]

        def after(iters, m, j):
            _, sq, mult = iters[m - 1 - j]
            return (mult if mult is not None else sq).result

        if diff:
            j = min(diff)
            if bx[j] == 1:
                bx, by = by, bx
                ix, iy = iy, ix
                mx, my = my, mx
            # bit j is 0 on the x side (lone squaring) and 1 on the y side
            _, sqx, _ = ix[mx - 1 - j]
            _, sqy, multy = iy[my - 1 - j]
            if after(ix, mx, j) == after(iy, my, j):
                a_in = sqx.left
                cb = sqy.result
                b_wit = c_input(sqy)
                if a_in != cb ^ 1:
                    return Solution("dove", 3, (bs(a_in), bs(cb ^ 1)))
                if mx - 1 - j == 0:
                    # x's squaring acted on the identity string itself,
                    # forcing C(b_wit) to be all zeroes
                    return Solution("dove", 1, (bs(b_wit),))
                _, psq, pmult = ix[mx - 2 - j]
                c_wit = c_input(pmult if pmult is not None else psq)
                return Solution("dove", 4, (bs(c_wit), bs(b_wit)))
            return walk(steps_below(ix, mx, j), steps_below(iy, my, j))
        # identical low bits: one decomposition strictly extends the other
        if mx < my:
            ix, iy = iy, ix
            mx, my = my, mx
        _, sqt, multt = ix[mx - 1 - my]
        top_step = multt if multt is not None else sqt
        if top_step.result == ident:
            return Solution("dove", 2, (bs(c_input(top_step)),))
        return walk(steps_below(ix, mx, my), steps_below(iy, my, my))

    def pull(sol: Solution) -> Solution:
        if sol.case == 1:
            (x,) = sol.witnesses
            return Solution("dove", 2, (bs(last_c_input(x)),))
        if sol.case == 2:
            raise SoundnessViolation(
                "dove_to_dlog: the operator never leaves [2^n]"
            )
        if sol.case == 3:
            x, y = sol.witnesses
            return collision_pull(x, y)
        if sol.case == 4:
            x, y = sol.witnesses
            if ops.index_value(x) == tgt:
                return Solution("dove", 2, (bs(last_c_input(x)),))
            if ops.index_value(y) == tgt:
                return Solution("dove", 2, (bs(last_c_input(y)),))
            # away from the target the translation is a xor, so the
            # translated collision is an index collision
            assert ops.index_value(x) == ops.index_value(y)
            return collision_pull(x, y)
        if sol.case == 5:
            x, y = sol.witnesses
            if ops.index_value(y) == tgt:
                return Solution("dove", 2, (bs(last_c_input(y)),))
            return Solution(
                "dove", 4, (bs(last_c_input(x)), bs(last_c_input(y)))
            )
        raise ValueError(f"dlog has no case {sol.case}")

    return Reduction("dove_to_dlog", inst, target, pull)


# --------------------------------------------------------------------------
# dlog -> general_claw


def red_dlog_to_general_claw(inst: DLogInstance) -> Reduction:
    """One circuit indexes, the other indexes and translates by the target.

    A claw equates an index with a translated index, which either walks
    back to the discrete logarithm of the target or witnesses the failed
    cancellation; collisions and range escapes map to the remaining
    solution types, scanning the indexing trace for the first step that
    left [s] where needed.
    """
    _require_valid(inst)
    rep = inst.rep
    s, l, t = rep.s, rep.width, rep.target
    sqmul = build_square_multiply(rep.f, s, rep.identity, rep.generator)

    b = CircuitBuilder(l)
    u = b.inputs()
    ig = b.inline(sqmul, u)
    below = b.not_(b.geq_const(u, s))
    sigma0 = b.build(b.mux(below, ig, u))

    b = CircuitBuilder(l)
    u = b.inputs()
    ig = b.inline(sqmul, u)
    translated = b.inline(rep.f, b.const_vec(t, l) + ig)
    below = b.not_(b.geq_const(u, s))
    sigma1 = b.build(b.mux(below, translated, u))

    target = GeneralClawInstance(sigma0, sigma1, s)
    ops = GroupoidOps(rep)

    def first_overflow(x: int) -> Solution:
        _, tr = ops.index(x)
        for step in tr.steps:
            if step.result >= s:
                return Solution("dlog", 2, (step.left, step.right))
        raise AssertionError("index left [s] with no overflowing step")

    def pull(sol: Solution) -> Solution:
        if sol.case == 1:
            u, v = sol.witnesses
            x, y = u.value, v.value
            delta = (x - y) % s
            if ops.index_value(delta) == t:
                return Solution("dlog", 1, (delta,))
            return Solution("dlog", 5, (x, y))
        if sol.case == 2:
            u, v = sol.witnesses
            x, y = u.value, v.value
            if x >= s:
                return first_overflow(y)
            if y >= s:
                return first_overflow(x)
            return Solution("dlog", 3, (x, y))
        if sol.case == 3:
            u, v = sol.witnesses
            x, y = u.value, v.value
            if x >= s or y >= s:
                inner = y if x >= s else x
                iv = ops.index_value(inner)
                if iv >= s:
                    return first_overflow(inner)
                return Solution("dlog", 2, (t, iv))
            return Solution("dlog", 4, (x, y))
        if sol.case == 4:
            (u,) = sol.witnesses
            return first_overflow(u.value)
        if sol.case == 5:
            (u,) = sol.witnesses
            x = u.value
            iv = ops.index_value(x)
            if iv >= s:
                return first_overflow(x)
            return Solution("dlog", 2, (t, iv))
        raise ValueError(f"general_claw has no case {sol.case}")

    return Reduction("dlog_to_general_claw", inst, target, pull)


# --------------------------------------------------------------------------
# general_claw -> collision


def red_general_claw_to_collision(inst: GeneralClawInstance) -> Reduction:
    """Hash n+1 selector bits through the corresponding composition chain.

    The produced circuit applies sigma_{x_n} first to the zero string
    and sigma_{x_0} last. The pull-back recomputes both chains: a chain
    value escaping [s] yields a range witness at the last escape, and
    otherwise the latest position where the chains agree under differing
    continuations yields a claw or a one-sided collision.
    """
    _require_valid(inst)
    n = inst.sigma0.num_inputs
    s = inst.s
    b = CircuitBuilder(n + 1)
    x = b.inputs()
    val = b.const_vec(0, n)
    for i in range(n, -1, -1):
        val = b.mux(x[i], b.inline(inst.sigma1, val), b.inline(inst.sigma0, val))
    target = CollisionInstance(b.build(val))

    t0, t1 = truth_table(inst.sigma0), truth_table(inst.sigma1)

    def chain_values(bits: Tuple[int, ...]) -> List[int]:
        vals = [0] * (n + 2)
        acc = 0
        for i in range(n, -1, -1):
            acc = (t1 if bits[i] else t0)[acc]
            vals[i] = acc
        return vals

    def pull(sol: Solution) -> Solution:
        xb, yb = sol.witnesses
        xbits, ybits = xb.bits, yb.bits
        cx, cy = chain_values(xbits), chain_values(ybits)
        for bits, vals in ((xbits, cx), (ybits, cy)):
            over = [i for i in range(n + 1) if vals[i] >= s]
            if over:
                i = max(over)
                u = Bitstring.from_int(vals[i + 1], n)
                return Solution("general_claw", 4 if bits[i] == 0 else 5, (u,))
        i = max(k for k in range(n + 1) if xbits[k] != ybits[k])
        if cx[i] == cy[i]:
            u = Bitstring.from_int(cx[i + 1], n)
            v = Bitstring.from_int(cy[i + 1], n)
            pair = (u, v) if xbits[i] == 0 else (v, u)
            return Solution("general_claw", 1, pair)
        j = max(k for k in range(i) if cx[k] == cy[k])
        u = Bitstring.from_int(cx[j + 1], n)
        v = Bitstring.from_int(cy[j + 1], n)
        marks = (xbits[j], ybits[j])
        if marks == (0, 0):
            return Solution("general_claw", 2, (u, v))
        if marks == (1, 1):
            return Solution("general_claw", 3, (u, v))
        pair = (u, v) if marks == (0, 1) else (v, u)
        return Solution("general_claw", 1, pair)

    return Reduction("general_claw_to_collision", inst, target, pull)


# --------------------------------------------------------------------------
# collision -> claw


def red_collision_to_claw(inst: CollisionInstance) -> Reduction:
    """Tag the shrunk output with the selector bit; claws are impossible."""
    _require_valid(inst)
    c = inst.circuit
    n = c.num_inputs
    padded = pad_outputs(c, n - 1)

    def tagged(bit: int) -> Circuit:
        b = CircuitBuilder(n)
        outs = b.inline(padded, b.inputs())
        return b.build(outs + [b.const(bit)])

    target = ClawInstance(tagged(0), tagged(1))

    def pull(sol: Solution) -> Solution:
        if sol.case == 1:
            raise SoundnessViolation(
                "collision_to_claw: the tag bits make claws impossible"
            )
        u, v = sol.witnesses
        return Solution("collision", 1, (u, v))

    return Reduction("collision_to_claw", inst, target, pull)


# --------------------------------------------------------------------------
# claw -> general_claw


def red_claw_to_general_claw(inst: ClawInstance) -> Reduction:
    """Embed below a fresh top bit; the upper half is frozen pointwise."""
    _require_valid(inst)
    n = inst.sigma0.num_inputs

    def lifted(sigma: Circuit) -> Circuit:
        b = CircuitBuilder(n + 1)
        ins = b.inputs()
        first, rest = ins[0], ins[1:]
        sub = b.inline(sigma, rest)
        return b.build([first] + b.mux(first, rest, sub))

    target = GeneralClawInstance(lifted(inst.sigma0), lifted(inst.sigma1), 1 << n)

    def pull(sol: Solution) -> Solution:
        if sol.case in (4, 5):
            raise SoundnessViolation(
                "claw_to_general_claw: low inputs keep their leading zero, "
                "so their images stay below the size bound"
            )
        u, v = sol.witnesses
        # frozen upper-half points are injective and distinct from the
        # embedded image, so verified witnesses carry leading zeroes
        assert u[0] == 0 and v[0] == 0
        return Solution("claw", sol.case, (u[1:], v[1:]))

    return Reduction("claw_to_general_claw", inst, target, pull)


# --------------------------------------------------------------------------
# collision <-> prefix_collision


def red_collision_to_prefix(inst: CollisionInstance) -> Reduction:
    """Zero-pad to full length; collisions survive verbatim."""
    _require_valid(inst)
    target = PrefixCollisionInstance(
        pad_outputs(inst.circuit, inst.circuit.num_inputs)
    )

    def pull(sol: Solution) -> Solution:
        return Solution("collision", 1, sol.witnesses)

    return Reduction("collision_to_prefix", inst, target, pull)


def red_prefix_to_collision(inst: PrefixCollisionInstance) -> Reduction:
    """Ignore the last output bit; prefix collisions survive verbatim."""
    _require_valid(inst)
    if inst.circuit.num_outputs < 2:
        raise ValueError("prefix_collision instance must have width >= 2")
    target = CollisionInstance(drop_last_output(inst.circuit))

    def pull(sol: Solution) -> Solution:
        return Solution("prefix_collision", 1, sol.witnesses)

    return Reduction("prefix_to_collision", inst, target, pull)


# --------------------------------------------------------------------------
# pigeon -> index


def _pigeon_index_op(c: Circuit) -> Circuit:
    """Operation circuit whose indexing function shifts [2^(n+1)] up by
    2^n, halves the even top half into the third quarter, and evaluates
    the payload circuit on the decoded odd top half."""
    n = c.num_inputs
    k = n + 2
    w = 1 << n
    g = (1 << k) - 1

    def fresh():
        b = CircuitBuilder(2 * k)
        ins = b.inputs()
        return b, ins[:k], ins[k:]

    # split doubling: shifted value starting 01 jumps to the top quarter
    b, u, v = fresh()
    d = b.sub_const(v, w)
    pred1 = b.build(
        [
            b.and_(
                b.and_(b.eq_vec(u, v), b.not_(b.eq_const(v, g))),
                b.and_(b.not_(d[0]), d[1]),
            )
        ]
    )
    b, u, v = fresh()
    d = b.sub_const(v, w)
    body1 = b.build([b.const(1), b.const(1)] + d[2:])

    # plain doubling, conjugated by the shift
    b, u, v = fresh()
    pred2 = b.build([b.and_(b.eq_vec(u, v), b.not_(b.eq_const(v, g)))])
    b, u, v = fresh()
    d = b.sub_const(v, w)
    body2 = b.build(b.add_const(d[1:] + [d[0]], w))

    # generator action on the top quarter evaluates the payload; this
    # branch must win over the successor branch below whenever both
    # guards hold, and it deliberately covers only values >= 3 * 2^n
    # (the images of the even top half), not the whole top half
    b, u, v = fresh()
    pred3 = b.build([b.and_(b.eq_const(u, g), b.and_(v[0], v[1]))])
    b, u, v = fresh()
    body3 = b.build([b.const(0), b.const(0)] + b.inline(c, v[2:]))

    # successor, conjugated by the shift
    b, u, v = fresh()
    d = b.sub_const(v, w)
    pred4 = b.build(
        [b.and_(b.eq_const(u, g), b.not_(b.and_(d[0], b.not_(d[k - 1]))))]
    )
    b, u, v = fresh()
    d = b.sub_const(v, w)
    body4 = b.build(b.add_const(d[: k - 1] + [b.const(1)], w))

    b, u, v = fresh()
    default = b.build(v)
    return build_piecewise(
        [(pred1, body1), (pred2, body2), (pred3, body3), (pred4, body4)], default
    )


def red_pigeon_to_index(inst: PigeonInstance) -> Reduction:
    """Emulate the circuit at the leaves of the indexing computation tree.

    Width n+2, size 2^(n+2), identity 2^n, generator all-ones, target 0.
    The indexing function is a bijection from the non-leaf inputs onto
    the values >= 2^n, and on the odd top half (the leaves) it returns
    the circuit's value on the decoded leaf, so target preimages and
    collisions live entirely in leaf territory.
    """
    _require_valid(inst)
    c = inst.circuit
    n = c.num_inputs
    k = n + 2
    rep = GroupoidRep(1 << k, _pigeon_index_op(c), 1 << n, (1 << k) - 1, 0)
    target = IndexInstance(rep)
    lo = 1 << (n + 1)

    def decode(a: int) -> Bitstring:
        if a < lo or a % 2 == 0:
            raise SoundnessViolation(
                f"pigeon_to_index: witness {a} lies outside the leaf set, "
                "where the indexing function is injective and avoids the target"
            )
        return Bitstring.from_int((a - 1) // 2 - (1 << n), n)

    def pull(sol: Solution) -> Solution:
        if sol.case == 1:
            (x,) = sol.witnesses
            return Solution("pigeon", 1, (decode(x),))
        if sol.case == 2:
            raise SoundnessViolation(
                "pigeon_to_index: the operation circuit outputs n+2 bits, "
                "which never reach s = 2^(n+2)"
            )
        if sol.case == 3:
            x, y = sol.witnesses
            return Solution("pigeon", 2, (decode(x), decode(y)))
        raise ValueError(f"index has no case {sol.case}")

    return Reduction("pigeon_to_index", inst, target, pull)


# --------------------------------------------------------------------------
# index -> pigeon


def red_index_to_pigeon(inst: IndexInstance) -> Reduction:
    """Compare indexing values against the target, fixing inputs >= s.

    C(x) = bd((index(bc x) - t) mod s) below s and the identity above.
    A zero of C either certifies the target's preimage or, when the
    indexing value escaped [s], scans its trace for the first escaping
    step; collisions work the same way.
    """
    _require_valid(inst)
    rep = inst.rep
    s, l, t = rep.s, rep.width, rep.target
    sqmul = build_square_multiply(rep.f, s, rep.identity, rep.generator)
    b = CircuitBuilder(l)
    x = b.inputs()
    wide = b.widen(b.inline(sqmul, x), l + 2)
    acc = b.add_const(wide, (s - t) % s)
    for _ in range(2):
        acc = b.mux(b.geq_const(acc, s), b.sub_const(acc, s), acc)
    below = b.not_(b.geq_const(x, s))
    target_c = b.build(b.mux(below, acc[2:], x))
    target = PigeonInstance(target_c)
    ops = GroupoidOps(rep)

    def overflow_case(xv: int) -> Solution:
        _, tr = ops.index(xv)
        for step in tr.steps:
            if step.result >= s:
                return Solution("index", 2, (step.left, step.right))
        raise AssertionError("index left [s] with no overflowing step")

    def pull(sol: Solution) -> Solution:
        if sol.case == 1:
            (xb,) = sol.witnesses
            xv = xb.value
            assert xv < s, "fixed points above s are nonzero"
            val = ops.index_value(xv)
            if val >= s:
                return overflow_case(xv)
            assert val == t
            return Solution("index", 1, (xv,))
        u, v = sol.witnesses
        xv, yv = u.value, v.value
        assert xv < s and yv < s, "fixed points above s are injective"
        if ops.index_value(xv) >= s:
            return overflow_case(xv)
        if ops.index_value(yv) >= s:
            return overflow_case(yv)
        return Solution("index", 3, (xv, yv))

    return Reduction("index_to_pigeon", inst, target, pull)


# --------------------------------------------------------------------------
# dlogp -> dlog


def red_dlogp_to_dlog(inst: DLogPInstance) -> Reduction:
    """Present the units mod p as [p-1] under e -> e-1.

    Because the operation is a genuine cyclic group multiplication with
    a genuine generator, only the discrete-logarithm case can occur in
    the produced instance; every other case pulls back to a soundness
    violation.
    """
    _require_valid(inst)
    p = inst.p
    rep = GroupoidRep(p - 1, build_modmul(p), 0, inst.g - 1, inst.y - 1)
    target = DLogInstance(rep)

    def pull(sol: Solution) -> Solution:
        if sol.case == 1:
            (a,) = sol.witnesses
            return Solution("dlogp", 1, (a,))
        raise SoundnessViolation(
            f"dlogp_to_dlog: case {sol.case} would contradict the group "
            f"axioms of the units mod {p}"
        )

    return Reduction("dlogp_to_dlog", inst, target, pull)


# --------------------------------------------------------------------------
# pigeon -> blichfeldt


def red_pigeon_to_blichfeldt(inst: PigeonInstance) -> Reduction:
    """Spread the circuit's range over the doubled integer lattice.

    With basis 2I and one-bit coordinates every selected vector is 0/1
    valued, so neither a lattice point nor a lattice-equivalent pair can
    exist once the zero string is excluded from the range; redirecting
    zero outputs to the value at 0^n keeps it excluded, and a collision
    of the patched circuit hands back a zero preimage or a collision.
    When 0^n already maps to itself, that is the answer outright.
    """
    _require_valid(inst)
    c = inst.circuit
    n = c.num_inputs
    zero = Bitstring.from_int(0, n)
    at_zero = evaluate(c, zero).value
    if at_zero == 0:
        return Reduction(
            "pigeon_to_blichfeldt",
            inst,
            None,
            shortcut=Solution("pigeon", 1, (zero,)),
        )
    b = CircuitBuilder(n)
    outs = b.inline(c, b.inputs())
    patched = b.mux(b.eq_const(outs, 0), b.const_vec(at_zero, n), outs)
    target = BlichfeldtInstance(
        IntMatrix.scaled_identity(n, 2), 1 << n, b.build(patched), 1
    )

    def pull(sol: Solution) -> Solution:
        if sol.case in (2, 3):
            raise SoundnessViolation(
                "pigeon_to_blichfeldt: the selected vectors are 0/1 valued "
                "and avoid the origin, so no lattice case can occur"
            )
        u, v = sol.witnesses
        if evaluate(c, u).value == 0:
            return Solution("pigeon", 1, (u,))
        if evaluate(c, v).value == 0:
            return Solution("pigeon", 1, (v,))
        return Solution("pigeon", 2, (u, v))

    return Reduction("pigeon_to_blichfeldt", inst, target, pull)


# --------------------------------------------------------------------------
# Registry


REDUCTIONS: Dict[str, Tuple[str, str, Callable[[Instance], Reduction]]] = {
    "collision_to_dove": ("collision", "dove", red_collision_to_dove),
    "dove_to_dlog": ("dove", "dlog", red_dove_to_dlog),
    "dlog_to_general_claw": ("dlog", "general_claw", red_dlog_to_general_claw),
    "general_claw_to_collision": (
        "general_claw",
        "collision",
        red_general_claw_to_collision,
    ),
    "collision_to_claw": ("collision", "claw", red_collision_to_claw),
    "claw_to_general_claw": ("claw", "general_claw", red_claw_to_general_claw),
    "collision_to_prefix": ("collision", "prefix_collision", red_collision_to_prefix),
    "prefix_to_collision": ("prefix_collision", "collision", red_prefix_to_collision),
    "pigeon_to_index": ("pigeon", "index", red_pigeon_to_index),
    "index_to_pigeon": ("index", "pigeon", red_index_to_pigeon),
    "dlogp_to_dlog": ("dlogp", "dlog", red_dlogp_to_dlog),
    "pigeon_to_blichfeldt": ("pigeon", "blichfeldt", red_pigeon_to_blichfeldt),
}

# Solution cases of the produced instance that each construction rules
# out; enumeration must find zero of these and pull-backs refuse them.
IMPOSSIBLE_CASES: Dict[str, Tuple[int, ...]] = {
    "collision_to_dove": (1, 2, 4),
    "dove_to_dlog": (2,),
    "collision_to_claw": (1,),
    "claw_to_general_claw": (4, 5),
    "pigeon_to_index": (2,),
    "pigeon_to_blichfeldt": (2, 3),
    "dlogp_to_dlog": (2, 3, 4, 5),
}


def reduction_ids() -> List[str]:
    return list(REDUCTIONS)


def build_reduction(rid: str, inst: Instance) -> Reduction:
    if rid not in REDUCTIONS:
        raise ValueError(f"unknown reduction {rid!r}")
    source_tag, _, builder = REDUCTIONS[rid]
    if inst.problem != source_tag:
        raise ValueError(f"{rid} expects a {source_tag} instance, got {inst.problem}")
    return builder(inst)
