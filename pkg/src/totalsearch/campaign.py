"""Round-trip soundness campaigns over seeded instance corpora.

A campaign generates source instances, applies a reduction (or a chain
of them), enumerates every solution of the produced instance, pulls
each one back, and verifies it against the source. Anything that goes
wrong becomes a failure entry carrying the serialized instance and
solution, so every failure replays.
"""

from __future__ import annotations

import hashlib
import json
import random
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence

from .formats import instance_to_dict, solution_to_dict
from .generators import random_instance
from .oracle import enumerate_solutions
from .problems import Instance, validate_instance, verify
from .reductions import (
    IMPOSSIBLE_CASES,
    REDUCTIONS,
    Reduction,
    SoundnessViolation,
    build_reduction,
    chain,
)

DEFAULT_CHAIN = (
    "collision_to_dove",
    "dove_to_dlog",
    "dlog_to_general_claw",
    "general_claw_to_collision",
)

# Source size floors: shrinking circuits need at least two inputs.
_MIN_N = {"collision": 2, "prefix_collision": 2}


def count_gates(inst: Instance) -> int:
    tag = inst.problem
    if tag in ("pigeon", "collision", "prefix_collision", "dove"):
        return inst.circuit.num_gates
    if tag in ("claw", "general_claw"):
        return inst.sigma0.num_gates + inst.sigma1.num_gates
    if tag in ("dlog", "index"):
        return inst.rep.f.num_gates
    if tag == "blichfeldt":
        return inst.v.num_gates
    return 0


def source_corpus(
    source_tag: str, n: int, count: int, seed: int, label: str
) -> List[Instance]:
    """Deterministic corpus of valid source instances for one campaign."""
    out = []
    lo = _MIN_N.get(source_tag, 1)
    hi = max(n, lo)
    for i in range(count):
        rng = random.Random(f"{seed}:{label}:{source_tag}:{i}")
        out.append(random_instance(source_tag, rng.randint(lo, hi), rng))
    return out


def _build_chain(rids: Sequence[str], inst: Instance) -> Reduction:
    red = build_reduction(rids[0], inst)
    for rid in rids[1:]:
        if red.shortcut is not None:
            return red
        red = chain(red, build_reduction(rid, red.target))
    return red


def _run_instance(args) -> dict:
    rids, inst, strict = args
    label = "+".join(rids)
    impossible = IMPOSSIBLE_CASES.get(rids[0], ()) if len(rids) == 1 else ()
    out = {
        "shortcut": False,
        "solutions": 0,
        "pullbacks_verified": 0,
        "impossible_seen": {str(c): 0 for c in impossible},
        "source_gates": count_gates(inst),
        "target_gates": 0,
        "failures": [],
    }

    def fail(stage: str, reason: str, sol=None, back=None):
        entry = {
            "reduction": label,
            "stage": stage,
            "reason": reason,
            "source_instance": instance_to_dict(inst),
        }
        if sol is not None:
            entry["target_solution"] = solution_to_dict(sol)
        if back is not None:
            entry["pulled_solution"] = solution_to_dict(back)
        out["failures"].append(entry)

    try:
        red = _build_chain(rids, inst)
    except (ValueError, SoundnessViolation) as e:
        fail("build", f"reduction construction failed: {e}")
        return out
    if red.shortcut is not None:
        out["shortcut"] = True
        verdict = verify(inst, red.shortcut, strict)
        if verdict:
            out["pullbacks_verified"] += 1
        else:
            fail("shortcut", f"shortcut solution rejected: {verdict.reason}",
                 back=red.shortcut)
        return out
    out["target_gates"] = count_gates(red.target)
    bad = validate_instance(red.target)
    if bad:
        fail("target", f"produced instance invalid: {'; '.join(bad)}")
        return out
    for sol in enumerate_solutions(red.target, strict_index_distinct=strict):
        out["solutions"] += 1
        if sol.case in impossible:
            out["impossible_seen"][str(sol.case)] += 1
            fail("impossible", f"ruled-out case {sol.case} materialized", sol)
            continue
        try:
            back = red.pull_back(sol)
        except SoundnessViolation as e:
            fail("pullback", f"soundness violation: {e}", sol)
            continue
        verdict = verify(inst, back, strict)
        if verdict:
            out["pullbacks_verified"] += 1
        else:
            fail("verify", f"pulled-back solution rejected: {verdict.reason}",
                 sol, back)
    return out


def _merge(results: List[dict], impossible) -> dict:
    agg = {
        "instances": len(results),
        "shortcuts": sum(r["shortcut"] for r in results),
        "solutions_enumerated": sum(r["solutions"] for r in results),
        "pullbacks_verified": sum(r["pullbacks_verified"] for r in results),
        "impossible_cases": {
            str(c): sum(r["impossible_seen"].get(str(c), 0) for r in results)
            for c in impossible
        },
        "size_growth": {
            "max_source_gates": max((r["source_gates"] for r in results), default=0),
            "max_target_gates": max((r["target_gates"] for r in results), default=0),
        },
    }
    failures = [f for r in results for f in r["failures"]]
    return agg, failures


def _campaign_id(kind: str, config: dict) -> str:
    digest = hashlib.sha256(
        json.dumps(config, sort_keys=True).encode()
    ).hexdigest()[:12]
    return f"{kind}-{digest}"


def _map_instances(work, jobs: int) -> List[dict]:
    if jobs > 1 and len(work) > 1:
        with Pool(jobs) as pool:
            return pool.map(_run_instance, work)
    return [_run_instance(args) for args in work]


def run_roundtrip(
    reduction_id: str,
    n: int,
    count: int,
    seed: int,
    strict_index: bool = False,
    jobs: int = 1,
) -> dict:
    """Campaign over one reduction; deterministic for a given config."""
    if reduction_id not in REDUCTIONS:
        raise ValueError(f"unknown reduction {reduction_id!r}")
    config = {
        "reduction": reduction_id,
        "n": n,
        "count": count,
        "seed": seed,
        "strict_index": strict_index,
    }
    source_tag = REDUCTIONS[reduction_id][0]
    corpus = source_corpus(source_tag, n, count, seed, reduction_id)
    results = _map_instances(
        [((reduction_id,), inst, strict_index) for inst in corpus], jobs
    )
    agg, failures = _merge(results, IMPOSSIBLE_CASES.get(reduction_id, ()))
    failures.sort(key=lambda f: json.dumps(f, sort_keys=True))
    return {
        "campaign": _campaign_id("roundtrip", config),
        "kind": "roundtrip",
        "seed": seed,
        "config": config,
        "index_distinct_mode": "strict" if strict_index else "lenient",
        "reductions": {reduction_id: agg},
        "failures": failures,
        "total_failures": len(failures),
    }


def run_fuzz(
    seed: int,
    count: int,
    n: int,
    reductions: Optional[Sequence[str]] = None,
    chains: Optional[Sequence[Sequence[str]]] = None,
    strict_index: bool = False,
    jobs: int = 1,
) -> dict:
    """Randomized campaign across reductions and chained paths."""
    rids = list(reductions) if reductions is not None else list(REDUCTIONS)
    chain_paths = [list(c) for c in chains] if chains is not None else [list(DEFAULT_CHAIN)]
    config = {
        "seed": seed,
        "count": count,
        "n": n,
        "reductions": rids,
        "chains": chain_paths,
        "strict_index": strict_index,
    }
    per_reduction: Dict[str, dict] = {}
    all_failures: List[dict] = []
    for rid in rids:
        if rid not in REDUCTIONS:
            raise ValueError(f"unknown reduction {rid!r}")
        source_tag = REDUCTIONS[rid][0]
        corpus = source_corpus(source_tag, n, count, seed, rid)
        results = _map_instances(
            [((rid,), inst, strict_index) for inst in corpus], jobs
        )
        agg, failures = _merge(results, IMPOSSIBLE_CASES.get(rid, ()))
        per_reduction[rid] = agg
        all_failures.extend(failures)
    per_chain: Dict[str, dict] = {}
    for path in chain_paths:
        label = "+".join(path)
        bad = [rid for rid in path if rid not in REDUCTIONS]
        if bad:
            raise ValueError(f"unknown reductions in chain: {bad}")
        for prev_rid, next_rid in zip(path, path[1:]):
            if REDUCTIONS[prev_rid][1] != REDUCTIONS[next_rid][0]:
                raise ValueError(f"chain {label} breaks between {prev_rid} and {next_rid}")
        source_tag = REDUCTIONS[path[0]][0]
        corpus = source_corpus(source_tag, min(n, 2), count, seed, label)
        results = _map_instances(
            [(tuple(path), inst, strict_index) for inst in corpus], jobs
        )
        agg, failures = _merge(results, ())
        per_chain[label] = agg
        all_failures.extend(failures)
    all_failures.sort(key=lambda f: json.dumps(f, sort_keys=True))
    return {
        "campaign": _campaign_id("fuzz", config),
        "kind": "fuzz",
        "seed": seed,
        "config": config,
        "index_distinct_mode": "strict" if strict_index else "lenient",
        "reductions": per_reduction,
        "chains": per_chain,
        "failures": all_failures,
        "total_failures": len(all_failures),
    }
