import json

import pytest

from totalsearch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_solve_verify_pipeline(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    sol = tmp_path / "sol.json"
    code, _, _ = run(
        capsys, "gen", "--problem", "pigeon", "--n", "3", "--seed", "5",
        "--out", str(inst),
    )
    assert code == 0
    code, _, _ = run(capsys, "solve", "--in", str(inst), "--out", str(sol))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--in", str(inst), "--solution", str(sol))
    assert code == 0
    assert json.loads(out)["accepted"] is True


def test_verify_rejects(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    sol = tmp_path / "sol.json"
    run(capsys, "gen", "--problem", "dove", "--n", "2", "--seed", "1",
        "--out", str(inst))
    sol.write_text(
        json.dumps({"problem": "dove", "case": 3, "witnesses": ["00", "00"]})
    )
    code, out, _ = run(capsys, "verify", "--in", str(inst), "--solution", str(sol))
    assert code == 1
    assert json.loads(out)["accepted"] is False


def test_reduce_then_solve(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    target = tmp_path / "target.json"
    run(capsys, "gen", "--problem", "collision", "--n", "3", "--seed", "2",
        "--out", str(inst))
    code, _, _ = run(
        capsys, "reduce", "--reduction", "collision_to_dove",
        "--in", str(inst), "--out", str(target),
    )
    assert code == 0
    assert json.loads(target.read_text())["problem"] == "dove"
    code, out, _ = run(capsys, "solve", "--in", str(target))
    assert code == 0
    assert json.loads(out)["problem"] == "dove"


def test_reduce_shortcut_exit(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    # the identity circuit maps the zero string to itself
    doc = {
        "problem": "pigeon",
        "circuit": {"inputs": 2, "gates": [], "outputs": [0, 1]},
    }
    inst.write_text(json.dumps(doc))
    code, out, err = run(
        capsys, "reduce", "--reduction", "pigeon_to_blichfeldt", "--in", str(inst)
    )
    assert code == 2
    assert json.loads(out) == {"problem": "pigeon", "case": 1, "witnesses": ["00"]}
    assert "short-circuited" in err


def test_validate(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    doc = {
        "problem": "dlogp",
        "p": 7,
        "factors": [[2, 1], [3, 1]],
        "g": 2,
        "y": 3,
    }
    inst.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", "--in", str(inst))
    assert code == 1
    assert "not a generator" in json.loads(out)["violations"][0]


def test_chain_command(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    out_file = tmp_path / "out.json"
    run(capsys, "gen", "--problem", "collision", "--n", "2", "--seed", "3",
        "--out", str(inst))
    code, _, _ = run(
        capsys, "chain",
        "--reductions", "collision_to_dove,dove_to_dlog",
        "--in", str(inst), "--out", str(out_file),
    )
    assert code == 0
    assert json.loads(out_file.read_text())["problem"] == "dlog"


def test_unknown_reduction_is_usage_error(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    inst.write_text("{}")
    with pytest.raises(SystemExit) as e:
        main(["reduce", "--reduction", "bogus", "--in", str(inst)])
    assert e.value.code == 2


def test_roundtrip_exit_zero(tmp_path, capsys):
    code, out, _ = run(
        capsys, "roundtrip", "--reduction", "collision_to_claw",
        "--n", "3", "--count", "5", "--seed", "7",
    )
    assert code == 0
    report = json.loads(out)
    assert report["total_failures"] == 0
    assert report["reductions"]["collision_to_claw"]["instances"] == 5


def test_fuzz_deterministic(tmp_path, capsys):
    argv = [
        "fuzz", "--reductions", "collision_to_claw,prefix_to_collision",
        "--chain", "collision_to_dove,dove_to_dlog",
        "--n", "2", "--count", "3", "--seed", "9",
    ]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_fuzz_count_zero(capsys):
    code, out, _ = run(capsys, "fuzz", "--count", "0", "--n", "2", "--seed", "1")
    assert code == 0
    report = json.loads(out)
    assert report["total_failures"] == 0
    assert all(v["instances"] == 0 for v in report["reductions"].values())


def test_fuzz_jobs_match_serial(capsys):
    argv = [
        "fuzz", "--reductions", "collision_to_prefix", "--chain",
        "collision_to_claw", "--n", "2", "--count", "4", "--seed", "12",
    ]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel
