import json

import pytest

from spflag.cli import run


@pytest.fixture
def capture(capsys):
    def go(argv):
        rc = run(argv)
        return rc, capsys.readouterr().out

    return go


def test_dim(capture):
    rc, out = capture(["dim", "--n", "2", "--lambda", "1,0"])
    assert rc == 0 and out.strip() == "4"


def test_dim_zero(capture):
    rc, out = capture(["dim", "--n", "2", "--lambda", "0,0"])
    assert rc == 0 and out.strip() == "1"


def test_dim_type_a(capture):
    rc, out = capture(["dim", "--n", "3", "--lambda", "1,0", "--system", "A"])
    assert rc == 0 and out.strip() == "3"


def test_fixed_points_count(capture):
    rc, out = capture(["fixed-points", "--n", "2", "--count"])
    assert rc == 0 and out.strip() == "16"


def test_fixed_points_dump_schema(capture):
    rc, out = capture(["fixed-points", "--n", "1"])
    doc = json.loads(out)
    assert rc == 0 and doc["count"] == 2
    assert doc["collections"] == [{"1,1": [1]}, {"1,1": [2]}]


def test_threads_do_not_change_output(capture):
    rc1, out1 = capture(["fixed-points", "--n", "2", "--threads", "1"])
    rc2, out2 = capture(["fixed-points", "--n", "2", "--threads", "3"])
    assert rc1 == rc2 == 0 and out1 == out2


def test_qchar_schema(capture):
    rc, out = capture(["qchar", "--n", "2", "--lambda", "1,0"])
    doc = json.loads(out)
    assert rc == 0
    assert doc["terms"][0] == {"q": 0, "weight": [1, 0], "mult": 1}
    assert sum(t["mult"] for t in doc["terms"]) == 4
    keys = [(t["q"], t["weight"]) for t in doc["terms"]]
    assert keys == sorted(keys)


def test_qchar_omega_basis(capture):
    rc, out = capture(["qchar", "--n", "2", "--lambda", "0,1", "--weight-basis", "omega"])
    doc = json.loads(out)
    assert {"q": 0, "weight": [0, 1], "mult": 1} in doc["terms"]


def test_weyl_matches_qchar_at_q1(capture):
    rc, wout = capture(["weyl", "--n", "2", "--lambda", "1,1"])
    doc = json.loads(wout)
    assert rc == 0 and doc["dimension"] == 16
    assert sum(t["mult"] for t in doc["terms"]) == 16


def test_polytope_dump(capture):
    rc, out = capture(["polytope", "--n", "2", "--lambda", "1,0"])
    doc = json.loads(out)
    assert rc == 0 and doc["count"] == 4
    assert len(doc["inequalities"]) == 4
    assert [0, 0, 0, 0] in doc["points"]


def test_abl_verify_cli(capture):
    rc, out = capture(
        ["abl-verify", "--n", "1", "--lambda", "2", "--trials", "5", "--seed", "3"]
    )
    doc = json.loads(out)
    assert rc == 0 and doc["matched"] and doc["convention"] == "direct"
    assert len(doc["points"]) == 5


def test_abl_verify_seed_env(capture, monkeypatch):
    monkeypatch.setenv("SPFLAG_SEED", "9")
    rc, out1 = capture(["abl-verify", "--n", "1", "--lambda", "1", "--trials", "3"])
    doc = json.loads(out1)
    assert doc["seed"] == 9
    rc, out2 = capture(
        ["abl-verify", "--n", "1", "--lambda", "1", "--trials", "3", "--seed", "9"]
    )
    assert out1 == out2


def test_abl_verify_deterministic(capture):
    args = ["abl-verify", "--n", "2", "--lambda", "1,0", "--trials", "4", "--seed", "1"]
    rc1, out1 = capture(args)
    rc2, out2 = capture(args)
    assert out1 == out2


def test_discrepancy_json(capture):
    rc, out = capture(["discrepancy", "--n", "2", "--d", "1,2"])
    doc = json.loads(out)
    assert rc == 0 and doc["canonical_identity"]
    by_pair = {(r["i"], r["j"]): r for r in doc["rows"]}
    assert by_pair[(1, 2)]["b"] == 2 and by_pair[(1, 2)]["exceptional"]


def test_discrepancy_csv(capture):
    rc, out = capture(["discrepancy", "--n", "2", "--d", "2", "--format", "csv"])
    lines = out.strip().splitlines()
    assert lines[0] == "i,j,b,exceptional"
    assert "1,2,3,True" in lines


def test_usage_errors(capture):
    rc, _ = capture(["dim", "--n", "2", "--lambda", "1,0,0"])
    assert rc == 2
    rc, _ = capture(["dim", "--n", "2", "--lambda", "1,x"])
    assert rc == 2
    rc, _ = capture(["discrepancy", "--n", "2", "--d", "2,1"])
    assert rc == 2
    rc, _ = capture(["fixed-points", "--n", "9", "--count"])
    assert rc == 2


def test_force_overrides_soft_limit(capture):
    rc, out = capture(["dim", "--n", "5", "--lambda", "0,0,0,0,0", "--force"])
    assert rc == 0 and out.strip() == "1"


def test_unknown_command_exits_2():
    assert run(["frobnicate"]) == 2


def test_check_geometry_roundtrip(tmp_path, capture):
    doc = {
        "n": 2,
        "d": [1, 2],
        "spaces": [
            [["1", "0", "0", "0"]],
            [["1", "0", "0", "0"], ["0", "1", "0", "0"]],
        ],
    }
    path = tmp_path / "flag.json"
    path.write_text(json.dumps(doc))
    rc, out = capture(["check-geometry", "--input", str(path)])
    assert rc == 0 and json.loads(out)["member"]

    rc, out = capture(["lift", "--input", str(path)])
    lifted = json.loads(out)
    assert rc == 0 and sorted(lifted["spaces"]) == ["1,1", "1,2", "1,3", "2,2"]


def test_check_geometry_nonmember(tmp_path, capture):
    doc = {
        "n": 2,
        "d": [1, 2],
        "spaces": [
            [["0", "1", "0", "0"]],
            [["0", "1", "0", "0"], ["0", "0", "1", "0"]],
        ],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    rc, out = capture(["check-geometry", "--input", str(path)])
    assert rc == 1 and not json.loads(out)["member"]
    rc, out = capture(["lift", "--input", str(path)])
    assert rc == 1 and "error" in json.loads(out)


def test_check_geometry_rational_entries(tmp_path, capture):
    doc = {"n": 1, "d": [1], "spaces": [[["1/2", "3/7"]]]}
    path = tmp_path / "line.json"
    path.write_text(json.dumps(doc))
    rc, out = capture(["check-geometry", "--input", str(path)])
    assert rc == 0 and json.loads(out)["member"]


def test_output_file(tmp_path, capture):
    target = tmp_path / "out.txt"
    rc, out = capture(["dim", "--n", "1", "--lambda", "4", "--output", str(target)])
    assert rc == 0 and target.read_text() == "5"
