"""JSON interchange for instances, solutions, and reports.

All emitters build dicts in a fixed field order and render with a fixed
layout, so identical objects serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Union

from .circuit import CircuitParseError, circuit_from_dict, circuit_to_dict
from .encoding import Bitstring
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
    Solution,
)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def instance_to_dict(inst: Instance) -> dict:
    tag = inst.problem
    if tag in ("pigeon", "collision", "prefix_collision", "dove"):
        return {"problem": tag, "circuit": circuit_to_dict(inst.circuit)}
    if tag == "claw":
        return {
            "problem": tag,
            "sigma0": circuit_to_dict(inst.sigma0),
            "sigma1": circuit_to_dict(inst.sigma1),
        }
    if tag == "general_claw":
        return {
            "problem": tag,
            "sigma0": circuit_to_dict(inst.sigma0),
            "sigma1": circuit_to_dict(inst.sigma1),
            "s": inst.s,
        }
    if tag in ("dlog", "index"):
        rep = inst.rep
        return {
            "problem": tag,
            "s": rep.s,
            "f": circuit_to_dict(rep.f),
            "id": rep.identity,
            "g": rep.generator,
            "t": rep.target,
        }
    if tag == "dlogp":
        return {
            "problem": tag,
            "p": inst.p,
            "factors": [list(f) for f in inst.factors],
            "g": inst.g,
            "y": inst.y,
        }
    if tag == "blichfeldt":
        return {
            "problem": tag,
            "basis": [list(row) for row in inst.basis.entries],
            "s": inst.s,
            "coord_width": inst.coord_width,
            "v": circuit_to_dict(inst.v),
        }
    raise ValueError(f"unknown problem {tag!r}")


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict) or "problem" not in doc:
        raise ValueError("instance document must be an object with a 'problem' tag")
    tag = doc["problem"]
    try:
        if tag == "pigeon":
            return PigeonInstance(circuit_from_dict(doc["circuit"]))
        if tag == "collision":
            return CollisionInstance(circuit_from_dict(doc["circuit"]))
        if tag == "prefix_collision":
            return PrefixCollisionInstance(circuit_from_dict(doc["circuit"]))
        if tag == "dove":
            return DoveInstance(circuit_from_dict(doc["circuit"]))
        if tag == "claw":
            return ClawInstance(
                circuit_from_dict(doc["sigma0"]), circuit_from_dict(doc["sigma1"])
            )
        if tag == "general_claw":
            return GeneralClawInstance(
                circuit_from_dict(doc["sigma0"]),
                circuit_from_dict(doc["sigma1"]),
                int(doc["s"]),
            )
        if tag in ("dlog", "index"):
            rep = GroupoidRep(
                int(doc["s"]),
                circuit_from_dict(doc["f"]),
                int(doc["id"]),
                int(doc["g"]),
                int(doc["t"]),
            )
            return DLogInstance(rep) if tag == "dlog" else IndexInstance(rep)
        if tag == "dlogp":
            return DLogPInstance(
                int(doc["p"]),
                tuple((int(q), int(k)) for q, k in doc["factors"]),
                int(doc["g"]),
                int(doc["y"]),
            )
        if tag == "blichfeldt":
            return BlichfeldtInstance(
                IntMatrix.from_rows(doc["basis"]),
                int(doc["s"]),
                circuit_from_dict(doc["v"]),
                int(doc["coord_width"]),
            )
    except KeyError as e:
        raise ValueError(f"{tag} instance document missing field {e}") from None
    raise ValueError(f"unknown problem {tag!r}")


def solution_to_dict(sol: Solution) -> dict:
    witnesses = [str(w) if isinstance(w, Bitstring) else w for w in sol.witnesses]
    return {"problem": sol.problem, "case": sol.case, "witnesses": witnesses}


def solution_from_dict(doc: dict) -> Solution:
    for key in ("problem", "case", "witnesses"):
        if key not in doc:
            raise ValueError(f"solution document missing field {key!r}")
    witnesses = tuple(
        Bitstring(w) if isinstance(w, str) else int(w) for w in doc["witnesses"]
    )
    return Solution(doc["problem"], int(doc["case"]), witnesses)


def load_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitParseError(f"invalid JSON at char {e.pos}: {e.msg}") from None
    return instance_from_dict(doc)


def load_solution(text: str) -> Solution:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"invalid JSON at char {e.pos}: {e.msg}") from None
    return solution_from_dict(doc)
