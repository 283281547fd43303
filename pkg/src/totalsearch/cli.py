"""Command line front end: gen, reduce, solve, verify, roundtrip, fuzz, chain."""

from __future__ import annotations

import argparse
import random
import sys
from typing import List, Optional

from . import campaign, formats
from .generators import PROBLEMS, random_instance
from .oracle import brute_force
from .problems import validate_instance, verify
from .reductions import REDUCTIONS, SoundnessViolation, build_reduction
from .campaign import _build_chain


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    inst = random_instance(args.problem, args.n, rng, num_gates=args.gates)
    _emit(formats.dumps(formats.instance_to_dict(inst)), args.out)
    return 0


def _cmd_reduce(args) -> int:
    inst = formats.load_instance(_read(args.infile))
    red = build_reduction(args.reduction, inst)
    if red.shortcut is not None:
        _emit(formats.dumps(formats.solution_to_dict(red.shortcut)), args.out)
        sys.stderr.write(
            "reduction short-circuited: wrote a source solution, not an instance\n"
        )
        return 2
    _emit(formats.dumps(formats.instance_to_dict(red.target)), args.out)
    return 0


def _cmd_solve(args) -> int:
    inst = formats.load_instance(_read(args.infile))
    sol = brute_force(inst, strict_index_distinct=args.strict_index_distinct)
    _emit(formats.dumps(formats.solution_to_dict(sol)), args.out)
    return 0


def _cmd_verify(args) -> int:
    inst = formats.load_instance(_read(args.infile))
    sol = formats.load_solution(_read(args.solution))
    verdict = verify(inst, sol, strict_index_distinct=args.strict_index_distinct)
    _emit(
        formats.dumps(
            {
                "accepted": verdict.accepted,
                "case": verdict.case,
                "reason": verdict.reason,
            }
        ),
        args.out,
    )
    return 0 if verdict.accepted else 1


def _cmd_validate(args) -> int:
    inst = formats.load_instance(_read(args.infile))
    violations = validate_instance(inst)
    _emit(formats.dumps({"valid": not violations, "violations": violations}), args.out)
    return 0 if not violations else 1


def _cmd_chain(args) -> int:
    rids = args.reductions.split(",")
    for rid in rids:
        if rid not in REDUCTIONS:
            raise SystemExit(f"unknown reduction {rid!r}")
    inst = formats.load_instance(_read(args.infile))
    red = _build_chain(rids, inst)
    if red.shortcut is not None:
        _emit(formats.dumps(formats.solution_to_dict(red.shortcut)), args.out)
        sys.stderr.write(
            "chain short-circuited: wrote a source solution, not an instance\n"
        )
        return 2
    _emit(formats.dumps(formats.instance_to_dict(red.target)), args.out)
    return 0


def _cmd_roundtrip(args) -> int:
    report = campaign.run_roundtrip(
        args.reduction,
        n=args.n,
        count=args.count,
        seed=args.seed,
        strict_index=args.strict_index_distinct,
        jobs=args.jobs,
    )
    _emit(formats.dumps(report), args.out)
    return 0 if report["total_failures"] == 0 else 1


def _cmd_fuzz(args) -> int:
    reductions = args.reductions.split(",") if args.reductions else None
    chains = None
    if args.chain:
        chains = [c.split(",") for c in args.chain]
    report = campaign.run_fuzz(
        seed=args.seed,
        count=args.count,
        n=args.n,
        reductions=reductions,
        chains=chains,
        strict_index=args.strict_index_distinct,
        jobs=args.jobs,
    )
    _emit(formats.dumps(report), args.out)
    return 0 if report["total_failures"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="totalsearch",
        description="Total search problems, constructive reductions, and "
        "brute-force round-trip verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--n", type=int, default=3, help="bit-size parameter")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gates", type=int, default=None, help="gate budget")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("reduce", help="apply a reduction's instance map")
    p.add_argument("--reduction", required=True, choices=sorted(REDUCTIONS))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("solve", help="brute-force the first solution")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--strict-index-distinct", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a solution against an instance")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--strict-index-distinct", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("validate", help="check instance invariants")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("chain", help="apply several reductions in sequence")
    p.add_argument("--reductions", required=True, help="comma-separated ids")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("roundtrip", help="soundness campaign for one reduction")
    p.add_argument("--reduction", required=True, choices=sorted(REDUCTIONS))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict-index-distinct", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("fuzz", help="campaign across reductions and chains")
    p.add_argument("--reductions", default=None, help="comma-separated ids")
    p.add_argument(
        "--chain",
        action="append",
        default=None,
        help="comma-separated chained path (repeatable)",
    )
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict-index-distinct", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fuzz)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, SoundnessViolation, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
