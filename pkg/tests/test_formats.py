import json
import random

import pytest

from totalsearch.encoding import Bitstring
from totalsearch.formats import (
    dumps,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    load_solution,
    solution_from_dict,
    solution_to_dict,
)
from totalsearch.generators import PROBLEMS, random_instance
from totalsearch.problems import Solution


@pytest.mark.parametrize("problem", PROBLEMS)
def test_instance_roundtrip(problem):
    rng = random.Random(f"fmt:{problem}")
    for _ in range(5):
        inst = random_instance(problem, 3, rng)
        doc = instance_to_dict(inst)
        assert instance_from_dict(json.loads(json.dumps(doc))) == inst


def test_instance_bytes_stable():
    rng = random.Random(0)
    inst = random_instance("dlog", 3, rng)
    text = dumps(instance_to_dict(inst))
    again = dumps(instance_to_dict(load_instance(text)))
    assert text == again


def test_solution_roundtrip():
    for sol in (
        Solution("pigeon", 1, (Bitstring("010"),)),
        Solution("dove", 4, (Bitstring("01"), Bitstring("10"))),
        Solution("dlog", 5, (3, 4)),
        Solution("blichfeldt", 2, (7,)),
    ):
        doc = solution_to_dict(sol)
        assert solution_from_dict(json.loads(json.dumps(doc))) == sol


def test_solution_mixed_witness_kinds():
    text = dumps(solution_to_dict(Solution("dlog", 1, (5,))))
    sol = load_solution(text)
    assert sol.witnesses == (5,)
    assert isinstance(sol.witnesses[0], int)


def test_malformed_documents():
    with pytest.raises(ValueError):
        load_instance("{}")
    with pytest.raises(ValueError):
        load_instance('{"problem": "martian"}')
    with pytest.raises(ValueError):
        load_instance('{"problem": "pigeon"}')
    with pytest.raises(ValueError):
        load_solution('{"problem": "pigeon", "case": 1}')
    with pytest.raises(ValueError):
        load_instance("{naah")
