import json
import subprocess
import sys
from pathlib import Path

import pytest

from repgf.cli import emit_report, main, parse_problem, parse_report, parse_word, run_command
from repgf.errors import CharacteristicError, ValidationError

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def _s3_text(p=7, action=None, N=None):
    return json.dumps(
        {
            "field": {"p": p, "k": 1},
            "N": {"moduli": N or [3]},
            "H": {"perm_gens": [[1, 0]]},
            "action": action or [[[-1]]],
        }
    )


def test_parse_problem_valid():
    spec = parse_problem(_s3_text())
    assert spec.group.order == 6


def test_parse_problem_char_refused():
    with pytest.raises(CharacteristicError, match="characteristic divides group order"):
        parse_problem(_s3_text(p=3))


def test_parse_problem_bad_action():
    with pytest.raises(ValidationError, match="not an automorphism"):
        parse_problem(_s3_text(action=[[[2]]], N=[4]))


def test_parse_problem_reports_location():
    with pytest.raises(ValidationError, match="^field"):
        parse_problem(json.dumps({"field": {"p": 6}, "N": {"moduli": [3]}, "H": {"perm_gens": []}, "action": []}))
    with pytest.raises(ValidationError, match="reps.bad"):
        data = json.loads(_s3_text())
        data["reps"] = {"bad": {"images": {"n0": [[3]], "h0": [[1]]}}}
        parse_problem(json.dumps(data))
    with pytest.raises(ValidationError, match="JSON"):
        parse_problem("{")


def test_parse_word():
    spec = parse_problem(_s3_text())
    G = spec.group
    a, b = G.gens
    assert parse_word(G, "n0*n0") == G.mul(a, a) == parse_word(G, "n0^-1")
    assert parse_word(G, "1") == 0
    with pytest.raises(ValidationError):
        parse_word(G, "q7")


def _run(args, tmp_path, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_command(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out, _ = _run(["classify", str(PROBLEMS / "s3_gf7.json"), "--report", str(rep)], tmp_path, capsys)
    assert code == 0 and "sum = 6" in out
    data = json.loads(rep.read_text())
    assert [e["theta_dim"] for e in data["entries"]] == [1, 1, 2]
    assert data["sum"] == 6 and data["complete"] is True and data["field_compat"] is True
    assert set(data["entries"][0]) == {"j", "chi", "rho_dim", "theta_dim", "endo_dim", "irreducible"}


def test_mackey_command(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out, _ = _run(["mackey", str(PROBLEMS / "c4_gf3.json"), "--rep", "L", "--report", str(rep)], tmp_path, capsys)
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["condition_holds"] is False
    assert data["direct_irreducible"] is True
    assert data["i_total"] == 2 and data["i_LL"] == 1


def test_intertwine_and_match(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, _, _ = _run(
        ["intertwine", str(PROBLEMS / "s3_gf7.json"), "--rep", "trivial", "--rep2", "trivial", "--report", str(rep)],
        tmp_path,
        capsys,
    )
    assert code == 0 and json.loads(rep.read_text())["i"] == 1
    code, out, _ = _run(["match", str(PROBLEMS / "s3_gf5.json"), "--rep", "std"], tmp_path, capsys)
    assert code == 0 and "no one-dimensional N-composition factor" in out


def test_induce_irr_verify(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, _, _ = _run(["induce", str(PROBLEMS / "c4_gf3.json"), "--rep", "L", "--oracle", "--report", str(rep)], tmp_path, capsys)
    data = json.loads(rep.read_text())
    assert code == 0 and data["images"] == {"n0": [[0, 2], [1, 0]]}
    assert data["induced_irreducible"] and data["induced_oracle_irreducible"]
    code, out, _ = _run(["irr", str(PROBLEMS / "s3_gf7.json"), "--rep", "rho", "--oracle"], tmp_path, capsys)
    assert code == 0 and "irreducible = True" in out
    code, out, _ = _run(["verify", str(PROBLEMS / "d4_gf5.json")], tmp_path, capsys)
    assert code == 0 and "all checks passed" in out


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(_s3_text(p=3))
    code, _, err = _run(["classify", str(bad)], tmp_path, capsys)
    assert code == 2 and "characteristic divides group order" in err
    code, _, err = _run(["irr", str(PROBLEMS / "s3_gf7.json"), "--rep", "nope"], tmp_path, capsys)
    assert code == 2 and "unknown representation" in err
    code, _, err = _run(["mackey", str(PROBLEMS / "s3_gf7.json"), "--rep", "rho", "--subgroup", "n0"], tmp_path, capsys)
    assert code == 3 and "reducible" in err


def test_report_round_trip_and_determinism(tmp_path):
    spec = parse_problem((PROBLEMS / "d4_gf5.json").read_text())
    r1 = run_command("classify", spec, seed=5)
    text = emit_report(r1)
    assert parse_report(text) == r1
    assert emit_report(parse_report(text)) == text
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        subprocess.run(
            [sys.executable, "-m", "repgf.cli", "verify", str(PROBLEMS / "s3_gf7.json"), "--seed", "9", "--report", str(path)],
            check=True,
            capture_output=True,
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
