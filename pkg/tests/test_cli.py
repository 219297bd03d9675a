import json

import pytest

from toroidal.cli import main

EVAL = {"type": "eval", "factors": [{"g": "sl2", "m": 1, "z": ["2", "3"]}]}
INDUCED = {"type": "induced", "g": "sl2", "m": 0, "level": "1", "depth": 3}
MIXED = {"type": "tensor", "parts": [
    {"type": "restricted_eval", "factors": [{"module": dict(INDUCED, depth=4), "z": ["2"]}]},
    {"type": "eval", "factors": [{"m": 1, "z": ["3", "5"]}]}]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_summary(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(INDUCED))
    code, out, _ = run(capsys, "build", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 0
    # trivial U, level 1: dims of the graded pieces count 3-colored partitions
    assert data["graded_dims"] == [1, 3, 9, 22]
    assert data["basis"][0] == "vac"


def test_build_reports_witness(capsys):
    code, out, _ = run(capsys, "build", json.dumps(MIXED))
    data = json.loads(out)
    assert code == 0 and data["witness"]["category"] == "C_tau"
    assert data["witness"]["multiplicity_free"] == [True]


def test_apply_eval(capsys):
    # e(1, (1)) on v1 = f v0 in V(1) at (2, 3): 2 * 3 = 6 times v0
    code, out, _ = run(capsys, "apply", "--module", json.dumps(EVAL), "--key", "e(1,(1))", "--vector", "v1")
    assert code == 0 and json.loads(out) == {"v0": "6"}
    code, out, _ = run(capsys, "apply", "--module", json.dumps(EVAL), "--key", "K1", "--vector", "v0")
    assert code == 0 and json.loads(out) == {}


def test_apply_induced_and_window(capsys):
    m = json.dumps(INDUCED)
    code, out, _ = run(capsys, "apply", "--module", m, "--key", "f(-1)", "--vector", "vac")
    assert code == 0 and json.loads(out) == {"f(-1)vac": "1"}
    code, out, _ = run(capsys, "apply", "--module", m, "--key", "e(1)", "--vector", "f(-1)vac")
    assert code == 0 and json.loads(out) == {"vac": "1"}
    # raising beyond the truncation depth is refused, not approximated
    code, out, err = run(capsys, "apply", "--module", m, "--key", "f(-4)", "--vector", "vac")
    assert code == 1 and out == "" and "degree" in err


@pytest.mark.parametrize("desc,field", [
    ({"type": "eval", "factors": [{"m": 1, "z": [0.5, "3"]}]}, "module.factors[0].z[0]"),
    ({"type": "eval", "factors": [{"m": -1, "z": ["2"]}]}, "module.factors[0].m"),
    ({"type": "bogus"}, "module.type"),
    ({"type": "induced", "m": 0}, "module.depth"),
])
def test_config_errors_name_the_field(capsys, desc, field):
    code, _, err = run(capsys, "build", json.dumps(desc))
    assert code == 2 and field in err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "verify", "--suite", "psi-properties", "--module", str(path))
    assert code == 2 and "module" in err and "malformed" in err


def test_bad_key_and_window(capsys):
    code, _, err = run(capsys, "apply", "--module", json.dumps(EVAL), "--key", "zz(1)", "--vector", "v0")
    assert code == 2 and "key" in err
    code, _, err = run(capsys, "verify", "--suite", "delta-identities", "--window", "4..x")
    assert code == 2 and "window" in err


def test_verify_passes_and_writes_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "--suite", "delta-identities", "--window", "-4..4", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["pass"] and data == json.loads(text)
    assert data["config"]["suite"] == "delta-identities"


def test_verify_failure_exit_one(capsys):
    wit = {"category": "C_tau", "p": [{"roots": ["4"]}, {"roots": ["2", "5"]}]}
    code, out, _ = run(capsys, "verify", "--suite", "psi-properties", "--module", json.dumps(MIXED),
                       "--witness", json.dumps(wit))
    data = json.loads(out)
    assert code == 1 and not data["pass"]
    assert data["checks"][0]["name"] == "witness holds" and data["counterexamples"]


def test_verify_is_deterministic(capsys, tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"r{i}.json"
        code, _, _ = run(capsys, "verify", "--suite", "bracket-jacobi", "--rank", "1", "--seed", "3",
                         "--out", str(p))
        assert code == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2
